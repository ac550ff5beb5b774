//! Exact q-expansion coefficients of the j-function.
//!
//! `j(q) = 1/q + 744 + Σ c(n) qⁿ`, computed as `E₄³ / Δ` with
//! `E₄ = 1 + 240 Σ σ₃(n) qⁿ`, `E₆ = 1 − 504 Σ σ₅(n) qⁿ` and
//! `Δ = (E₄³ − E₆²) / 1728`, all in exact integer power-series arithmetic.
//!
//! Computed tables are kept in a process-wide store that only grows, and
//! mirrored to a plain-text cache file:
//!
//! ```text
//! jcoef v1 <count>
//! 1 196884
//! 2 21493760
//! ...
//! ```

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rug::Integer;

use crate::{Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "SMDIFF_CACHE_DIR";

/// Default ceiling on the number of coefficients an evaluation may use.
///
/// 1500 terms reach 8192-bit accuracy at the largest `|q| = e^{−π√3}`.
pub const DEFAULT_MAX_COEFFICIENTS: usize = 1500;

const CACHE_FILE: &str = "jcoef-v1.txt";
const HEADER: &str = "jcoef v1";

struct Store {
    table: Option<Arc<Vec<Integer>>>,
    cache_dir: Option<PathBuf>,
    cache_dir_set: bool,
    max_coefficients: usize,
}

static STORE: Mutex<Store> = Mutex::new(Store {
    table: None,
    cache_dir: None,
    cache_dir_set: false,
    max_coefficients: DEFAULT_MAX_COEFFICIENTS,
});

fn store() -> std::sync::MutexGuard<'static, Store> {
    STORE.lock().unwrap_or_else(|e| e.into_inner())
}

/// Overrides the cache directory (`None` disables the disk cache).
pub fn set_cache_dir(dir: Option<PathBuf>) {
    let mut s = store();
    s.cache_dir = dir;
    s.cache_dir_set = true;
}

/// Sets the coefficient budget available to evaluations.
pub fn set_max_coefficients(limit: usize) {
    store().max_coefficients = limit;
}

pub fn max_coefficients() -> usize {
    store().max_coefficients
}

/// Cache directory in effect: explicit override, then
/// `$SMDIFF_CACHE_DIR`, then the platform cache directory.
pub fn cache_dir() -> Option<PathBuf> {
    let s = store();
    if s.cache_dir_set {
        return s.cache_dir.clone();
    }
    drop(s);
    default_cache_dir()
}

fn default_cache_dir() -> Option<PathBuf> {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => dirs::cache_dir().map(|d| d.join("smdiff")),
    }
}

/// `c(1), …, c(count)`.
pub fn j_coefficients(count: usize) -> Vec<Integer> {
    coefficient_table(count)[..count].to_vec()
}

/// Shared table holding at least `count` coefficients.
pub(crate) fn coefficient_table(count: usize) -> Arc<Vec<Integer>> {
    let mut s = store();
    let have = s.table.as_ref().map_or(0, |t| t.len());
    if let Some(t) = s.table.as_ref().filter(|_| have >= count) {
        return Arc::clone(t);
    }
    let dir = if s.cache_dir_set { s.cache_dir.clone() } else { default_cache_dir() };
    let path = dir.as_ref().map(|d| d.join(CACHE_FILE));
    let cached = path.as_deref().and_then(|p| read_cache(p).ok());
    let table = match cached {
        Some(t) if t.len() >= count => t,
        _ => {
            // Grow geometrically so repeated small requests do not recompute.
            let target = count.max(2 * have).max(64);
            let t = compute_coefficients(target);
            if let Some(p) = path.as_deref() {
                let _ = write_cache(p, &t);
            }
            t
        }
    };
    let table = Arc::new(table);
    s.table = Some(Arc::clone(&table));
    table
}

fn divisor_power_sums(len: usize, k: u32) -> Vec<Integer> {
    let mut sums = vec![Integer::new(); len];
    for d in 1..len {
        let p = Integer::from(Integer::u_pow_u(d as u32, k));
        for m in (d..len).step_by(d) {
            sums[m] += &p;
        }
    }
    sums
}

fn mul_truncated(a: &[Integer], b: &[Integer], len: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Computes `c(1..=count)` from scratch.
pub fn compute_coefficients(count: usize) -> Vec<Integer> {
    if count == 0 {
        return Vec::new();
    }
    // j·q through q^{count+1}; Δ/q needs one more term of the E-series.
    let len = count + 2;
    let ext = len + 1;
    let mut e4 = divisor_power_sums(ext, 3);
    let mut e6 = divisor_power_sums(ext, 5);
    for x in e4.iter_mut() {
        *x *= 240;
    }
    for x in e6.iter_mut() {
        *x *= -504;
    }
    e4[0] = Integer::from(1);
    e6[0] = Integer::from(1);

    let e4_cubed = mul_truncated(&mul_truncated(&e4, &e4, ext), &e4, ext);
    let e6_sq = mul_truncated(&e6, &e6, ext);
    let cusp: Vec<Integer> = (1..ext)
        .map(|n| {
            let mut d = Integer::from(&e4_cubed[n] - &e6_sq[n]);
            debug_assert!(d.is_divisible_u(1728));
            d.div_exact_u_mut(1728);
            d
        })
        .collect();
    debug_assert_eq!(cusp[0], 1);

    let mut jq: Vec<Integer> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = e4_cubed[n].clone();
        for k in 1..=n {
            acc -= &cusp[k] * &jq[n - k];
        }
        jq.push(acc);
    }
    debug_assert_eq!(jq[0], 1);
    debug_assert_eq!(jq[1], 744);
    jq.drain(..2);
    jq
}

/// Reads a cache file.
pub fn read_cache(path: &Path) -> Result<Vec<Integer>> {
    let bad = |msg: &str| Error::Cache(format!("{}: {msg}", path.display()));
    let file = fs::File::open(path).map_err(|e| bad(&e.to_string()))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?.map_err(|e| bad(&e.to_string()))?;
    let count: usize = header
        .strip_prefix(HEADER)
        .map(str::trim)
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| bad("malformed header"))?;
    let mut out = Vec::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| bad(&e.to_string()))?;
        let (n, v) = line.split_once(' ').ok_or_else(|| bad("malformed line"))?;
        if n.parse::<usize>().ok() != Some(i + 1) {
            return Err(bad("out-of-order index"));
        }
        out.push(v.trim().parse::<Integer>().map_err(|_| bad("malformed integer"))?);
    }
    if out.len() != count {
        return Err(bad("truncated file"));
    }
    Ok(out)
}

/// Writes a cache file atomically.
pub fn write_cache(path: &Path, coeffs: &[Integer]) -> Result<()> {
    let err = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(err)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp).map_err(err)?);
        writeln!(w, "{HEADER} {}", coeffs.len()).map_err(err)?;
        for (i, c) in coeffs.iter().enumerate() {
            writeln!(w, "{} {c}", i + 1).map_err(err)?;
        }
        w.flush().map_err(err)?;
    }
    fs::rename(&tmp, path).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `j·q` through the η-product route: `E₄³ / ∏(1 − qⁿ)²⁴`.
    fn eta_oracle(len: usize) -> Vec<i128> {
        let mul = |a: &[i128], b: &[i128]| {
            let mut out = vec![0i128; len];
            for i in 0..len {
                for j in 0..len - i {
                    out[i + j] += a[i] * b[j];
                }
            }
            out
        };
        let mut prod = vec![0i128; len];
        prod[0] = 1;
        for n in 1..len {
            let mut factor = vec![0i128; len];
            factor[0] = 1;
            factor[n] = -1;
            for _ in 0..24 {
                prod = mul(&prod, &factor);
            }
        }
        let mut e4 = vec![0i128; len];
        e4[0] = 1;
        for (n, x) in e4.iter_mut().enumerate().skip(1) {
            *x = 240 * (1..=n as i128).filter(|d| n as i128 % d == 0).map(|d| d * d * d).sum::<i128>();
        }
        let num = mul(&mul(&e4, &e4), &e4);
        let mut out = vec![0i128; len];
        for n in 0..len {
            out[n] = num[n] - (1..=n).map(|k| prod[k] * out[n - k]).sum::<i128>();
        }
        out
    }

    #[test]
    fn first_coefficients_match_eta_product() {
        let oracle = eta_oracle(7);
        assert_eq!(&oracle[..2], &[1, 744]);
        let c = compute_coefficients(5);
        assert_eq!(c.len(), 5);
        for (n, v) in c.iter().enumerate() {
            assert_eq!(*v, oracle[n + 2], "c({})", n + 1);
        }
        assert_eq!(c[0], 196884);
        assert_eq!(c[1], 21493760);
    }

    #[test]
    fn empty_request() {
        assert!(compute_coefficients(0).is_empty());
        assert!(j_coefficients(0).is_empty());
    }

    #[test]
    fn longer_tables_extend_shorter_ones() {
        let short = compute_coefficients(20);
        let long = compute_coefficients(40);
        assert_eq!(&long[..20], &short[..]);
        assert_eq!(long[2], 864299970);
        assert_eq!(long[3], 20245856256u64);
    }

    #[test]
    fn cache_roundtrip_and_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested").join(CACHE_FILE);
        let c = compute_coefficients(30);
        write_cache(&path, &c).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("jcoef v1 30\n1 196884\n2 21493760\n"));
        assert_eq!(read_cache(&path).unwrap(), c);

        fs::write(&path, "jcoef v1 3\n1 196884\n2 21493760\n").unwrap();
        assert!(matches!(read_cache(&path), Err(Error::Cache(_))));
        fs::write(&path, "garbage\n").unwrap();
        assert!(read_cache(&path).is_err());
    }
}
