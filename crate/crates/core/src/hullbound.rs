//! Combinatorial lower bounds on the Hermitian hull: the exponent N of the
//! evaluation points, the exponent-intersection sets L(N), and the
//! four-case closed form for |L(q²−1)|.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::agcons::{EvalSet, TwistedAgCode};
use crate::error::{precondition, Error, Result};
use crate::galois::lcm;

/// lcm of the multiplicative orders of the nonzero evaluation points.
///
/// The zero point is skipped: no power of x equals 1 at 0, and the
/// subgroup family's N = n − 1 only comes out this way.
pub fn compute_n(evalset: &EvalSet) -> Result<u64> {
    let f = evalset.field();
    let mut any = false;
    let mut n = 1;
    for &a in evalset.points().iter().filter(|a| !a.is_zero()) {
        any = true;
        n = lcm(n, f.mult_order(a)?);
    }
    if !any {
        return Err(Error::ZeroElement);
    }
    Ok(n)
}

/// { q·i mod N : 0 ≤ i ≤ deg_g } ∩ { j mod N : 0 ≤ j ≤ n − deg_g − 2 }.
pub fn compute_l(modulus: u64, deg_g: usize, n: usize, q: u64) -> BTreeSet<u64> {
    assert!(modulus >= 1, "N must be positive");
    let primal: BTreeSet<u64> = (0..=deg_g as u64).map(|i| (q * i) % modulus).collect();
    let dual_top = (n as i64) - (deg_g as i64) - 2;
    if dual_top < 0 {
        return BTreeSet::new();
    }
    (0..=dual_top as u64)
        .map(|j| j % modulus)
        .filter(|j| primal.contains(j))
        .collect()
}

/// Which branch of the closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosedFormCase(pub u8);

/// n = n0·q + q1 and k = k0·q + q0 with the ranges the closed form needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n0: usize,
    pub q1: usize,
    pub k0: usize,
    pub q0: usize,
}

impl Decomposition {
    /// Splits (n, k) base q and checks the closed-form constraints.
    pub fn of(q: usize, n: usize, k: usize) -> Option<Decomposition> {
        let d = Decomposition { n0: n / q, q1: n % q, k0: k / q, q0: k % q };
        check_tuple(q, d.n0, d.k0, d.q0, d.q1).ok().map(|_| d)
    }
}

fn check_tuple(q: usize, n0: usize, k0: usize, q0: usize, q1: usize) -> Result<()> {
    const CTX: &str = "closed form";
    if n0 < 1 || n0 + 1 > q {
        return Err(precondition(CTX, format!("need 1 ≤ n0 ≤ q−1, got n0 = {n0}")));
    }
    if q1 + 1 > q {
        return Err(precondition(CTX, format!("need 0 ≤ q1 ≤ q−1, got q1 = {q1}")));
    }
    if q0 + 1 > q {
        return Err(precondition(CTX, format!("need 0 ≤ q0 ≤ q−1, got q0 = {q0}")));
    }
    if q1 > q0 + 1 {
        return Err(precondition(CTX, format!("need q1 − q0 ≤ 1, got q1 = {q1}, q0 = {q0}")));
    }
    let upper = (q1 + n0 * q).saturating_sub(q0) / q;
    if k0 < 1 || k0 >= upper {
        return Err(precondition(CTX, format!("need 1 ≤ k0 < ⌊(q1 + n0·q − q0)/q⌋ = {upper}, got k0 = {k0}")));
    }
    Ok(())
}

/// |L(q²−1)| in closed form for n = n0·q + q1 and k = k0·q + q0.
pub fn ell_closed_form(q: usize, n0: usize, k0: usize, q0: usize, q1: usize) -> Result<(usize, ClosedFormCase)> {
    check_tuple(q, n0, k0, q0, q1)?;
    let (q, n0, k0, q0, q1) = (q as i64, n0 as i64, k0 as i64, q0 as i64, q1 as i64);
    let r1 = q1 + q - q0 - 2;
    let (value, case) = if k0 <= r1 {
        if q0 <= n0 - k0 - 2 {
            (k0 * (n0 - k0) + q0 + 1, 1)
        } else {
            ((k0 + 1) * (n0 - k0), 2)
        }
    } else if q0 < n0 - k0 - 2 {
        (k0 * (n0 - k0 - 1) + q1 + q, 3)
    } else {
        ((n0 - k0 - 1) * (k0 + 1) + (q1 + q - q0 - 1), 4)
    };
    Ok((value as usize, ClosedFormCase(case)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub decomposition: Decomposition,
    pub ell: usize,
    pub case: ClosedFormCase,
}

/// Everything known about the hull of one twisted code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub q: usize,
    pub n: usize,
    pub deg_g: usize,
    /// Exponent N of the nonzero evaluation points.
    pub exponent: u64,
    pub l_n: BTreeSet<u64>,
    pub l_full: BTreeSet<u64>,
    pub closed_form: Option<ClosedForm>,
    pub ell_exact: usize,
}

impl HullReport {
    /// ell_exact ≥ |L(N)| ≥ |L(q²−1)| (= closed form, when present).
    pub fn chain_holds(&self) -> bool {
        self.ell_exact >= self.l_n.len()
            && self.l_n.len() >= self.l_full.len()
            && self.closed_form.as_ref().map_or(true, |c| c.ell == self.l_full.len())
    }
}

pub fn hull_report(code: &TwistedAgCode) -> Result<HullReport> {
    let f = code.evalset().field();
    let q = f.q() as usize;
    let n = code.n();
    let deg_g = code.deg_g();
    let exponent = compute_n(code.evalset())?;
    let full = f.group_order() as u64;
    let l_n = compute_l(exponent, deg_g, n, q as u64);
    let l_full = compute_l(full, deg_g, n, q as u64);
    let closed_form = Decomposition::of(q, n, deg_g).map(|d| {
        let (ell, case) = ell_closed_form(q, d.n0, d.k0, d.q0, d.q1).expect("decomposition checked");
        ClosedForm { decomposition: d, ell, case }
    });
    Ok(HullReport {
        q,
        n,
        deg_g,
        exponent,
        l_n,
        l_full,
        closed_form,
        ell_exact: code.code().hull_dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldCtx;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn compute_n_examples() {
        let f49 = FieldCtx::for_q(7).unwrap();
        assert_eq!(compute_n(&EvalSet::subgroup(&f49, 25).unwrap()).unwrap(), 24);
        assert_eq!(compute_n(&EvalSet::cosets(&f49, 16, 1).unwrap()).unwrap(), 48);
        assert_eq!(compute_n(&EvalSet::affine(&f49, 2).unwrap()).unwrap(), 48);
        let e = EvalSet::custom(&f49, vec![crate::galois::Elem::ZERO, crate::galois::Elem::ONE]).unwrap();
        assert_eq!(compute_n(&e).unwrap(), 1);
    }

    #[test]
    fn compute_l_examples() {
        assert_eq!(compute_l(24, 10, 25, 7), set(&[0, 1, 4, 7, 8, 11]));
        assert_eq!(compute_l(48, 10, 25, 7), set(&[0, 1, 7, 8]));
        assert_eq!(compute_l(40, 13, 41, 9), set(&[0, 1, 5, 9, 10, 14, 18, 19, 23]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ell_closed_form(7, 3, 1, 3, 4).unwrap(), (4, ClosedFormCase(2)));
        assert_eq!(ell_closed_form(4, 3, 1, 0, 0).unwrap(), (3, ClosedFormCase(1)));
        assert_eq!(ell_closed_form(7, 6, 4, 2, 0).unwrap(), (9, ClosedFormCase(4)));
    }

    #[test]
    fn closed_form_rejects_out_of_range() {
        for (q, n0, k0, q0, q1, needle) in [
            (7, 7, 1, 0, 0, "n0"),
            (7, 3, 1, 0, 7, "q1"),
            (7, 3, 1, 7, 0, "q0"),
            (7, 3, 1, 0, 3, "q1 − q0"),
            (7, 3, 3, 0, 0, "k0"),
            (7, 3, 0, 0, 0, "k0"),
        ] {
            let err = ell_closed_form(q, n0, k0, q0, q1).unwrap_err().to_string();
            assert!(err.contains(needle), "{err}");
        }
    }

    #[test]
    fn reduction_mod_divisor_is_contained() {
        for (q, full) in [(7u64, 48u64), (9, 80)] {
            for divisor in (1..=full).filter(|d| full % d == 0) {
                for n in 3..40usize {
                    for deg in 0..n - 1 {
                        let big = compute_l(full, deg, n, q);
                        let small = compute_l(divisor, deg, n, q);
                        assert!(big.iter().all(|x| small.contains(&(x % divisor))));
                        if divisor as usize >= n - 1 {
                            assert!(small.len() >= big.len());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn report_for_table_zero_row() {
        let f = FieldCtx::for_q(7).unwrap();
        let code = TwistedAgCode::build(&EvalSet::subgroup(&f, 25).unwrap(), 10).unwrap();
        let r = hull_report(&code).unwrap();
        assert_eq!(r.exponent, 24);
        assert_eq!((r.ell_exact, r.l_n.len(), r.l_full.len()), (6, 6, 4));
        let cf = r.closed_form.clone().unwrap();
        assert_eq!((cf.ell, cf.case), (4, ClosedFormCase(2)));
        assert!(r.chain_holds());
    }
}
