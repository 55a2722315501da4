use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Pow;

use super::SearchError;

/// Both sides of the averaging inequality for monochromatic `K_t^{(k)}`
/// copies when every `R`-subset of an `N`-set holds one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supersaturation {
    /// `C(N, R) / (q · C(N - t, R - t))`.
    pub exact: BigRational,
    /// `(N / R)^t / q`.
    pub closed_form: BigRational,
}

impl Supersaturation {
    /// `exact ≥ closed_form`.
    pub fn holds(&self) -> bool {
        self.exact >= self.closed_form
    }

    /// Smallest integer at least `exact`.
    pub fn exact_ceil(&self) -> BigInt {
        self.exact.ceil().to_integer()
    }
}

pub fn supersaturation_bound(n: u64, r: u64, t: u64, q: u64, k: u64) -> Result<Supersaturation, SearchError> {
    if !(n >= r && r >= t && t >= k) || q == 0 || r == 0 {
        return Err(SearchError::InvalidParameters(format!(
            "need N >= R >= t >= k and q >= 1, got N={n} R={r} t={t} k={k} q={q}"
        )));
    }
    let big = |x: u64| BigInt::from(x);
    let exact = BigRational::new(binomial(big(n), big(r)), big(q) * binomial(big(n - t), big(r - t)));
    let ratio = BigRational::new(big(n), big(r));
    let closed_form = Pow::pow(ratio, t as u32) / BigRational::from_integer(big(q));
    Ok(Supersaturation { exact, closed_form })
}

/// `P · n^{t - 1/P}` with `P = Π s_i`.
pub fn kst_bound(n: usize, parts: &[usize]) -> f64 {
    let p: f64 = parts.iter().map(|&s| s as f64).product();
    let t = parts.len() as f64;
    p * (n as f64).powf(t - 1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn examples() {
        let s = supersaturation_bound(7, 6, 3, 2, 2).unwrap();
        assert_eq!(s.exact, ratio(7, 8));
        assert_eq!(s.exact_ceil(), BigInt::from(1));
        assert!(s.holds());
        for n in 3..10 {
            let s = supersaturation_bound(n, n, 3, 3, 2).unwrap();
            assert_eq!(s.exact, ratio(1, 3));
            assert_eq!(s.closed_form, ratio(1, 3));
        }
        assert!(supersaturation_bound(5, 6, 3, 2, 2).is_err());
        assert!(supersaturation_bound(7, 6, 3, 0, 2).is_err());
        assert!(supersaturation_bound(7, 6, 2, 2, 3).is_err());
    }

    #[test]
    fn exact_dominates_closed_form() {
        for n in 1..=14u64 {
            for r in 1..=n {
                for t in 1..=r {
                    for q in 1..=3 {
                        assert!(supersaturation_bound(n, r, t, q, 1).unwrap().holds(), "{n} {r} {t} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn kst_examples() {
        assert!((kst_bound(5, &[2, 2]) - 4.0 * 5f64.powf(1.75)).abs() < 1e-9);
        assert!((kst_bound(5, &[2, 2]) - 66.87).abs() < 0.01);
        assert_eq!(kst_bound(1, &[2, 3]), 6.0);
        assert_eq!(kst_bound(6, &[1, 1, 1]), 36.0);
    }
}
