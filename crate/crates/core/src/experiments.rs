//! Density of degree-bounded subtrees in random trees: the ratio of the
//! number of (BC-)subtrees with maximum degree at most `k` to the number of
//! all (BC-)subtrees.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::bc_enum;
use crate::error::{Error, Result};
use crate::oracle::Family;
use crate::subtree_enum;
use crate::tree::Tree;
use crate::weighted::Order;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRecord {
    pub n: usize,
    pub k: usize,
    pub sample_id: usize,
    pub ratio: Ratio<BigUint>,
}

impl RatioRecord {
    pub fn rendered(&self) -> String {
        render_decimal(&self.ratio)
    }
}

/// Mean ratio over all samples of one `(n, k)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanRecord {
    pub n: usize,
    pub k: usize,
    pub mean_ratio: Ratio<BigUint>,
}

/// Six fractional digits, ties rounded up.
pub fn render_decimal(r: &Ratio<BigUint>) -> String {
    let scale = BigUint::from(1_000_000u32);
    let two = BigUint::from(2u32);
    let scaled = (r.numer() * &scale * &two + r.denom()) / (r.denom() * &two);
    let (whole, frac) = scaled.div_rem(&scale);
    format!("{whole}.{frac:0>6}")
}

/// Number of subtrees of `t` with maximum degree at most `k`.
pub fn subtree_count(t: &Tree, k: usize) -> Result<BigUint> {
    let wt = subtree_enum::unit_weights(t, k);
    Ok(subtree_enum::count_all_weighted(wt, k, Order::Lexicographic)?.eval_counts())
}

/// Number of BC-subtrees of `t` with maximum degree at most `k`.
pub fn bc_count(t: &Tree, k: usize) -> Result<BigUint> {
    let wt = bc_enum::unit_weights(t, k);
    Ok(bc_enum::count_bc_all_weighted(wt, k, Order::Lexicographic)?.eval_counts())
}

fn family_count(t: &Tree, k: usize, family: Family) -> Result<BigUint> {
    match family {
        Family::Subtree => subtree_count(t, k),
        Family::Bc => bc_count(t, k),
    }
}

/// Smallest `k` swept for a family.
pub fn first_k(family: Family) -> usize {
    match family {
        Family::Subtree => 1,
        Family::Bc => 2,
    }
}

/// Ratios `count(k) / count(n - 1)` for `k` from [`first_k`] to `k_max` on
/// `samples` random trees. Sample `i` uses the tree seeded with
/// `seed + i` (wrapping).
pub fn ratio_sweep(
    n: usize,
    samples: usize,
    k_max: usize,
    seed: u64,
    family: Family,
) -> Result<Vec<RatioRecord>> {
    let min_n = first_k(family) + 1;
    if n < min_n {
        return Err(Error::InvalidArgument(format!(
            "{family} ratios need n >= {min_n}, got {n}"
        )));
    }
    if k_max > n - 1 {
        return Err(Error::InvalidArgument(format!("kmax {k_max} exceeds n - 1 = {}", n - 1)));
    }
    let mut out = Vec::new();
    for sample_id in 0..samples {
        let t = Tree::random(n, seed.wrapping_add(sample_id as u64))?;
        let total = family_count(&t, n - 1, family)?;
        for k in first_k(family)..=k_max {
            let part = family_count(&t, k, family)?;
            out.push(RatioRecord {
                n,
                k,
                sample_id,
                ratio: Ratio::new(part, total.clone()),
            });
        }
    }
    Ok(out)
}

/// Mean ratio per `(n, k)`, sorted by `(n, k)`.
pub fn aggregate(records: &[RatioRecord]) -> Vec<MeanRecord> {
    let mut cells: BTreeMap<(usize, usize), (Ratio<BigUint>, usize)> = BTreeMap::new();
    for r in records {
        let cell = cells
            .entry((r.n, r.k))
            .or_insert_with(|| (Ratio::zero(), 0));
        cell.0 = &cell.0 + &r.ratio;
        cell.1 += 1;
    }
    cells
        .into_iter()
        .map(|((n, k), (sum, count))| MeanRecord {
            n,
            k,
            mean_ratio: sum / Ratio::from_integer(BigUint::from(count)),
        })
        .collect()
}

/// Mean ratio for one `k`, or `None` when no record has it.
pub fn mean_at(records: &[RatioRecord], k: usize) -> Option<Ratio<BigUint>> {
    let picked: Vec<&RatioRecord> = records.iter().filter(|r| r.k == k).collect();
    if picked.is_empty() {
        return None;
    }
    let sum = picked.iter().fold(Ratio::zero(), |acc: Ratio<BigUint>, r| acc + &r.ratio);
    Some(sum / Ratio::from_integer(BigUint::from(picked.len())))
}

/// Path of the aggregate file written next to `path`: `runs.csv` becomes
/// `runs_mean.csv`.
pub fn mean_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".to_string());
    path.with_file_name(format!("{stem}_mean.{ext}"))
}

pub fn records_csv(records: &[RatioRecord]) -> String {
    let mut sorted: Vec<&RatioRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.n, r.k, r.sample_id));
    let mut out = String::from("n,k,sample_id,ratio\n");
    for r in sorted {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.k, r.sample_id, r.rendered()));
    }
    out
}

pub fn means_csv(means: &[MeanRecord]) -> String {
    let mut out = String::from("n,k,mean_ratio\n");
    for m in means {
        out.push_str(&format!("{},{},{}\n", m.n, m.k, render_decimal(&m.mean_ratio)));
    }
    out
}

/// Writes the per-sample CSV to `path` and the per-cell means to
/// [`mean_path`]`(path)`. Returns the second path.
pub fn emit_csv(records: &[RatioRecord], path: &Path) -> Result<PathBuf> {
    write_file(path, &records_csv(records))?;
    let companion = mean_path(path);
    write_file(&companion, &means_csv(&aggregate(records)))?;
    Ok(companion)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

/// `true` when the sequence never decreases and ends at exactly 1.
pub fn saturates(ratios: &[Ratio<BigUint>]) -> bool {
    ratios.windows(2).all(|w| w[0] <= w[1]) && ratios.last().is_some_and(|r| r.is_one())
}
