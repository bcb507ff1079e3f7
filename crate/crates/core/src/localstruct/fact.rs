//! The cubic `f_{s,p,t}(σ) = σ³(β³ + sβ² + pβ + t)`, `β = 1/σ - 3`, its
//! maximum over `σ ∈ [1 - 2^{-1/3}, 1/4]`, and the index monotonicity
//! `f_{s,p+x,t} <= f_{s+x,p,t}` for `β >= 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// `1 - 2^{-1/3}`, the lower end of the σ-range.
pub fn sigma_lo() -> f64 {
    1.0 - 2f64.powf(-1.0 / 3.0)
}

pub const SIGMA_HI: f64 = 0.25;

/// A rational `>= 1 - 2^{-1/3}` (it is `0.206299...`), used where the lower
/// end must be exact.
pub fn sigma_lo_rational() -> BigRational {
    BigRational::new(BigInt::from(2063), BigInt::from(10_000))
}

/// The eleven `(s, p, t)` triples whose maxima must stay below `5/8`.
pub const FACT_TRIPLES: [(i64, i64, i64); 11] = [
    (6, 10, 23),
    (6, 11, 22),
    (6, 12, 21),
    (7, 10, 21),
    (8, 10, 19),
    (9, 1, 27),
    (9, 6, 21),
    (9, 6, 23),
    (9, 7, 21),
    (9, 8, 19),
    (9, 9, 17),
];

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma <= 1.0 / 3.0) {
        return Err(Error::invalid(format!("σ = {sigma} outside (0, 1/3]")));
    }
    Ok(())
}

/// Evaluates via `(1-3σ)³ + sσ(1-3σ)² + pσ²(1-3σ) + tσ³`, which equals the
/// defining form and stays accurate near `σ = 1/3`.
pub fn f_spt(sigma: f64, s: f64, p: f64, t: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(eval(sigma, s, p, t))
}

fn eval(sigma: f64, s: f64, p: f64, t: f64) -> f64 {
    let u = 1.0 - 3.0 * sigma;
    u * u * u + s * sigma * u * u + p * sigma * sigma * u + t * sigma * sigma * sigma
}

pub fn f_spt_exact(
    sigma: &BigRational,
    s: &BigRational,
    p: &BigRational,
    t: &BigRational,
) -> Result<BigRational> {
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    if !sigma.is_positive() || *sigma > third {
        return Err(Error::invalid(format!("σ = {sigma} outside (0, 1/3]")));
    }
    let u = BigRational::one() - sigma * BigInt::from(3);
    let s2 = sigma * sigma;
    Ok(&u * &u * &u + s * sigma * &u * &u + p * &s2 * &u + t * &s2 * sigma)
}

/// Maximum of `f_{s,p,t}` over the σ-range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaMax {
    /// The larger of the refined grid maximum and the closed-form maximum.
    pub value: f64,
    pub argmax: f64,
    /// Grid search followed by golden-section refinement.
    pub refined: f64,
    /// Endpoints and stationary points of the cubic.
    pub closed_form: f64,
    /// `|refined - closed_form|`.
    pub refinement_error: f64,
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a < 1e-15 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (f(x), x)
}

/// Closed-form maximum over `[lo, hi]`: the cubic's coefficients are
/// `c1 = s - 9`, `c2 = 27 - 6s + p`, `c3 = -27 + 9s - 3p + t`.
fn closed_form_max(s: f64, p: f64, t: f64, lo: f64, hi: f64) -> (f64, f64) {
    let (c1, c2, c3) = (s - 9.0, 27.0 - 6.0 * s + p, -27.0 + 9.0 * s - 3.0 * p + t);
    let mut cands = vec![lo, hi];
    // f' = c1 + 2 c2 σ + 3 c3 σ²
    let (a, b, c) = (3.0 * c3, 2.0 * c2, c1);
    if a.abs() < 1e-300 {
        if b != 0.0 {
            cands.push(-c / b);
        }
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            // numerically stable pair of roots
            let qq = -0.5 * (b + b.signum() * sq);
            if qq != 0.0 {
                cands.push(qq / a);
                cands.push(c / qq);
            } else {
                cands.push(0.0);
            }
        }
    }
    cands
        .into_iter()
        .filter(|x| (lo..=hi).contains(x))
        .map(|x| (eval(x, s, p, t), x))
        .fold((f64::NEG_INFINITY, lo), |m, v| if v.0 > m.0 { v } else { m })
}

/// Grid search with spacing `step`, golden-section refinement around the best
/// grid point, cross-checked against the stationary points of the cubic.
pub fn max_over_sigma(s: f64, p: f64, t: f64, step: f64) -> Result<SigmaMax> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::invalid("σ grid step must be positive"));
    }
    let (lo, hi) = (sigma_lo(), SIGMA_HI);
    let f = |x: f64| eval(x, s, p, t);
    let n = ((hi - lo) / step).ceil() as usize;
    let mut best = (f(hi), hi, n);
    for i in 0..n {
        let x = lo + i as f64 * step;
        let v = f(x);
        if v > best.0 {
            best = (v, x, i);
        }
    }
    let left = if best.2 == 0 { lo } else { (lo + (best.2 - 1) as f64 * step).max(lo) };
    let right = (lo + (best.2 + 1) as f64 * step).min(hi);
    let (gv, gx) = golden_max(f, left, right);
    let (refined, rx) = if gv > best.0 { (gv, gx) } else { (best.0, best.1) };
    let (closed_form, cx) = closed_form_max(s, p, t, lo, hi);
    let (value, argmax) = if closed_form >= refined { (closed_form, cx) } else { (refined, rx) };
    Ok(SigmaMax {
        value,
        argmax,
        refined,
        closed_form,
        refinement_error: (refined - closed_form).abs(),
    })
}

#[derive(Clone, Debug)]
pub struct FactRow {
    pub spt: (i64, i64, i64),
    pub max: SigmaMax,
    /// Exact value at `σ = 1/4` (`β = 1`): `(1 + s + p + t) / 64`.
    pub at_quarter: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct FactReport {
    pub rows: Vec<FactRow>,
    pub tol: f64,
}

impl FactReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn max_refinement_error(&self) -> f64 {
        self.rows.iter().map(|r| r.max.refinement_error).fold(0.0, f64::max)
    }
}

pub fn five_eighths() -> BigRational {
    BigRational::new(BigInt::from(5), BigInt::from(8))
}

/// Checks `max_σ f_{s,p,t}(σ) <= 5/8 + tol` for every triple.
pub fn check_fact(triples: &[(i64, i64, i64)], step: f64, tol: f64) -> Result<FactReport> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let rows = triples
        .iter()
        .map(|&(s, p, t)| {
            let max = max_over_sigma(s as f64, p as f64, t as f64, step)?;
            let int = |x: i64| BigRational::from_integer(BigInt::from(x));
            let at_quarter = f_spt_exact(&quarter, &int(s), &int(p), &int(t))?;
            Ok(FactRow {
                spt: (s, p, t),
                pass: max.value <= 0.625 + tol && max.refinement_error < tol,
                max,
                at_quarter,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactReport { rows, tol })
}

/// `points` rationals evenly spaced from a rational just above
/// `1 - 2^{-1/3}` to `1/4`, inclusive.
pub fn rational_sigma_grid(points: usize) -> Vec<BigRational> {
    let lo = sigma_lo_rational();
    let hi = BigRational::new(BigInt::one(), BigInt::from(4));
    if points <= 1 {
        return vec![hi];
    }
    let span = &hi - &lo;
    (0..points)
        .map(|i| &lo + &span * BigRational::new(BigInt::from(i), BigInt::from(points - 1)))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct MonotonicityReport {
    pub checks: usize,
    pub equalities: usize,
    /// `(x, σ)` witnesses of `f_{s,p+x,t}(σ) > f_{s+x,p,t}(σ)`.
    pub violations: Vec<(BigRational, BigRational)>,
}

/// Exact check of `f_{s,p+x,t}(σ) <= f_{s+x,p,t}(σ)` at every `x` and grid σ.
pub fn check_monotonicity(
    s: &BigRational,
    p: &BigRational,
    t: &BigRational,
    xs: &[BigRational],
    grid: &[BigRational],
) -> Result<MonotonicityReport> {
    let mut rep = MonotonicityReport::default();
    // With σ = a/b, b³·f = (b-3a)³ + s·a(b-3a)² + p·a²(b-3a) + t·a³; scaling
    // s, p, t, x to a common denominator keeps every comparison integral.
    let coeffs = grid
        .iter()
        .map(|sigma| {
            let (a, b) = (sigma.numer(), sigma.denom());
            if !a.is_positive() || b < &(a * 4) {
                return Err(Error::invalid(format!("β < 1 at σ = {sigma}")));
            }
            let u = b - a * 3;
            Ok([&u * &u * &u, a * &u * &u, a * a * &u, a * a * a])
        })
        .collect::<Result<Vec<_>>>()?;
    for x in xs {
        if x.is_negative() {
            return Err(Error::invalid("x must be non-negative"));
        }
        let d = s.denom() * p.denom() * t.denom() * x.denom();
        let scale = |r: &BigRational| (r * &d).to_integer();
        let (si, pi, ti, xi) = (scale(s), scale(p), scale(t), scale(x));
        for (sigma, [c0, c1, c2, c3]) in grid.iter().zip(&coeffs) {
            let base = c0 * &d + &si * c1 + &pi * c2 + &ti * c3;
            let lhs = &base + &xi * c2;
            let rhs = base + &xi * c1;
            rep.checks += 1;
            if lhs == rhs {
                rep.equalities += 1;
            }
            if lhs > rhs {
                rep.violations.push((x.clone(), sigma.clone()));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn evaluation_examples() {
        assert!((f_spt(0.25, 6.0, 10.0, 23.0).unwrap() - 0.625).abs() < 1e-15);
        assert!((f_spt(0.25, 9.0, 9.0, 17.0).unwrap() - 9.0 / 16.0).abs() < 1e-15);
        assert!((f_spt(1.0 / 3.0, 4.0, 5.0, 27.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(f_spt(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(f_spt(-0.1, 1.0, 1.0, 1.0).is_err());
        let e = f_spt_exact(&q(1, 4), &q(6, 1), &q(10, 1), &q(23, 1)).unwrap();
        assert_eq!(e, q(5, 8));
        assert_eq!(f_spt_exact(&q(1, 3), &q(2, 1), &q(3, 1), &q(9, 1)).unwrap(), q(1, 3));
    }

    /// Defining form evaluated directly, as an independent oracle.
    fn direct(sigma: f64, s: f64, p: f64, t: f64) -> f64 {
        let b = 1.0 / sigma - 3.0;
        sigma.powi(3) * (b.powi(3) + s * b * b + p * b + t)
    }

    #[test]
    fn forms_agree() {
        for &(s, p, t) in &FACT_TRIPLES {
            for i in 0..50 {
                let x = sigma_lo() + (SIGMA_HI - sigma_lo()) * i as f64 / 49.0;
                let (a, b) = (f_spt(x, s as f64, p as f64, t as f64).unwrap(), direct(x, s as f64, p as f64, t as f64));
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn fact_triples_stay_below() {
        let rep = check_fact(&FACT_TRIPLES, 1e-3, 1e-9).unwrap();
        assert!(rep.all_pass());
        for row in &rep.rows[..3] {
            assert_eq!(row.at_quarter, five_eighths());
            assert!((row.max.value - 0.625).abs() < 1e-9);
            assert!((row.max.argmax - 0.25).abs() < 1e-9);
        }
        let r = rep.rows.iter().find(|r| r.spt == (9, 1, 27)).unwrap();
        assert!(r.max.value < 0.625);
        // a triple that fails: everything at its maximum
        let bad = check_fact(&[(9, 18, 27)], 1e-3, 1e-9).unwrap();
        assert!(!bad.all_pass());
    }

    #[test]
    fn refinement_matches_dense_scan() {
        for &(s, p, t) in &FACT_TRIPLES {
            let m = max_over_sigma(s as f64, p as f64, t as f64, 1e-3).unwrap();
            let dense = (0..=200_000)
                .map(|i| sigma_lo() + (SIGMA_HI - sigma_lo()) * i as f64 / 200_000.0)
                .map(|x| direct(x, s as f64, p as f64, t as f64))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(m.value >= dense - 1e-12);
            assert!(m.value <= dense + 1e-9);
            assert!(m.refinement_error < 1e-9);
        }
    }

    #[test]
    fn monotonicity_examples() {
        let grid = rational_sigma_grid(20);
        let (s, p, t) = (q(6, 1), q(10, 1), q(23, 1));
        let rep = check_monotonicity(&s, &p, &t, &[q(0, 1)], &grid).unwrap();
        assert_eq!(rep.equalities, rep.checks);
        let rep = check_monotonicity(&s, &p, &t, &[q(1, 1)], &[q(1, 4)]).unwrap();
        assert_eq!((rep.checks, rep.equalities), (1, 1));
        let rep = check_monotonicity(&s, &p, &t, &[q(1, 1)], &[q(21, 100)]).unwrap();
        assert_eq!((rep.equalities, rep.violations.len()), (0, 0));
        assert!(check_monotonicity(&s, &p, &t, &[q(-1, 1)], &grid).is_err());
    }

    #[test]
    fn monotonicity_agrees_with_direct_evaluation() {
        let grid = rational_sigma_grid(37);
        let tuples = [(q(7, 3), q(11, 5), q(3, 2), q(5, 7)), (q(0, 1), q(27, 1), q(1, 9), q(13, 4))];
        for (s, p, t, x) in tuples {
            let rep = check_monotonicity(&s, &p, &t, std::slice::from_ref(&x), &grid).unwrap();
            let mut eq = 0;
            for sigma in &grid {
                let lhs = f_spt_exact(sigma, &s, &(&p + &x), &t).unwrap();
                let rhs = f_spt_exact(sigma, &(&s + &x), &p, &t).unwrap();
                assert!(lhs <= rhs);
                eq += usize::from(lhs == rhs);
            }
            assert_eq!((rep.checks, rep.equalities, rep.violations.len()), (grid.len(), eq, 0));
        }
    }
}
