//! Evaluation sets, residues of dx/h(x), twist vectors and the twisted
//! one-point rational AG (GRS) codes v·C_L(D, kO).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::galois::{gcd, Elem, FieldCtx};
use crate::lincode::{DistanceClaim, LinearCode, Provenance};
use crate::matrix::Mat;

/// Which construction produced an evaluation set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    /// μ_{n−1} ∪ {0}.
    Subgroup { n: usize },
    /// { uᵢθ + uⱼ } for the first n0 subfield elements uᵢ.
    Affine { n0: usize },
    /// U_s ∪ θU_s ∪ … ∪ θ^t U_s ∪ {0}.
    Cosets { s: usize, t: usize },
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Subgroup { .. } => "subgroup",
            Family::Affine { .. } => "affine",
            Family::Cosets { .. } => "cosets",
            Family::Custom => "custom",
        }
    }
}

/// Distinct evaluation points in canonical order (zero first, then by
/// discrete log), together with the constant λ in h(x) = λ·Π(x − a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalSet {
    field: Arc<FieldCtx>,
    points: Vec<Elem>,
    family: Family,
    h_scale: Elem,
}

impl EvalSet {
    fn build(field: Arc<FieldCtx>, mut points: Vec<Elem>, family: Family, h_scale: Elem) -> Result<EvalSet> {
        points.sort();
        let before = points.len();
        points.dedup();
        if points.len() != before {
            return Err(precondition("evaluation set", "points are not distinct"));
        }
        if points.len() < 2 {
            return Err(precondition("evaluation set", "need at least two points"));
        }
        Ok(EvalSet { field, points, family, h_scale })
    }

    /// Corollary 3.3 points: all (n−1)-st roots of unity and zero.
    pub fn subgroup(field: &Arc<FieldCtx>, n: usize) -> Result<EvalSet> {
        let ord = field.group_order() as usize;
        const CTX: &str = "Corollary 3.3";
        if n < 2 || ord % (n - 1) != 0 {
            return Err(precondition(CTX, format!("(n−1) ∤ (q²−1) for n = {n}, q² − 1 = {ord}")));
        }
        if n == field.size() as usize {
            return Err(precondition(CTX, "n = q² is excluded"));
        }
        let step = ord / (n - 1);
        let points = std::iter::once(Elem::ZERO)
            .chain((0..n - 1).map(|j| field.theta_pow((j * step) as i64)))
            .collect();
        EvalSet::build(field.clone(), points, Family::Subgroup { n }, Elem::ONE)
    }

    /// Corollary 3.5 points uᵢα + uⱼ with α = θ; n = n0·q.
    ///
    /// h carries the constant −(α^q − α)^{1−n0}, which moves every residue
    /// into GF(q)* (without it the residues of even n0 sit in the other coset).
    pub fn affine(field: &Arc<FieldCtx>, n0: usize) -> Result<EvalSet> {
        let q = field.q() as usize;
        if n0 < 1 || n0 > q - 1 {
            return Err(precondition("Corollary 3.5", format!("n0 = {n0} outside 1..={}", q - 1)));
        }
        let alpha = field.theta();
        let sub = field.subfield_elements();
        let mut points = Vec::with_capacity(n0 * q);
        for &ui in &sub[..n0] {
            for &uj in &sub {
                points.push(field.add(field.mul(ui, alpha), uj));
            }
        }
        let diff = field.sub(field.conjugate(alpha), alpha);
        let base = field.inv(diff)?;
        let h_scale = field.neg(field.pow(base, n0 as u64 - 1));
        EvalSet::build(field.clone(), points, Family::Affine { n0 }, h_scale)
    }

    /// Corollary 3.6 points: U_s, the cosets θU_s, …, θ^tU_s, and zero.
    pub fn cosets(field: &Arc<FieldCtx>, s: usize, t: usize) -> Result<EvalSet> {
        const CTX: &str = "Corollary 3.6";
        let ord = field.group_order() as usize;
        let q = field.q() as usize;
        if s == 0 || ord % s != 0 {
            return Err(precondition(CTX, format!("s = {s} does not divide q²−1 = {ord}")));
        }
        let r = s / gcd(s as u64, q as u64 + 1) as usize;
        let t_max = ((q - 1) / r).saturating_sub(1);
        if t < 1 || t > t_max {
            return Err(precondition(CTX, format!("t = {t} outside 1..={t_max} (r = {r})")));
        }
        let index = ord / s;
        if index < 2 || t >= index {
            return Err(precondition(CTX, "no odd-exponent coset representative available"));
        }
        // θ^1 has odd exponent and is not in U_s; θ^1..θ^t are distinct cosets
        let step = index;
        let mut points = vec![Elem::ZERO];
        for rep in 0..=t {
            points.extend((0..s).map(|j| field.theta_pow((rep + j * step) as i64)));
        }
        EvalSet::build(field.clone(), points, Family::Cosets { s, t }, Elem::ONE)
    }

    /// Arbitrary distinct points with h monic.
    pub fn custom(field: &Arc<FieldCtx>, points: Vec<Elem>) -> Result<EvalSet> {
        EvalSet::build(field.clone(), points, Family::Custom, Elem::ONE)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn h_scale(&self) -> Elem {
        self.h_scale
    }

    /// Coefficients of h(x) = λ·Π(x − a), constant term first.
    pub fn h_poly(&self) -> Vec<Elem> {
        let f = &self.field;
        let mut coeffs = vec![self.h_scale];
        for &a in &self.points {
            let mut next = vec![Elem::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(c, a));
            }
            coeffs = next;
        }
        coeffs
    }

    /// Formal derivative of h.
    pub fn h_derivative(&self) -> Vec<Elem> {
        let f = &self.field;
        self.h_poly()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect()
    }

    /// Residues 1/h′(aᵢ) of ω = dx/h(x) at the evaluation points.
    pub fn residues(&self) -> Result<Vec<Elem>> {
        let f = &self.field;
        let dh = self.h_derivative();
        self.points
            .iter()
            .map(|&a| {
                let v = dh.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, a), c));
                f.inv(v).map_err(|_| precondition("residues", "h′ vanishes at an evaluation point"))
            })
            .collect()
    }

    /// vᵢ with vᵢ^{q+1} = Res_{Pᵢ}(ω), canonical per [`FieldCtx::solve_norm`].
    pub fn twist_vector(&self) -> Result<Vec<Elem>> {
        let f = &self.field;
        self.residues()?
            .into_iter()
            .enumerate()
            .map(|(index, r)| {
                f.solve_norm(r)
                    .map_err(|_| Error::ResidueNotNorm { index, value: f.format_elem(r) })
            })
            .collect()
    }
}

/// v·C_L(D, kO) with k = `deg_g`; dimension deg_g + 1, designed distance n − deg_g.
#[derive(Debug, Clone)]
pub struct TwistedAgCode {
    evalset: EvalSet,
    deg_g: usize,
    twist: Vec<Elem>,
    code: LinearCode,
}

impl TwistedAgCode {
    pub fn build(evalset: &EvalSet, deg_g: usize) -> Result<TwistedAgCode> {
        let n = evalset.len();
        if deg_g + 2 > n {
            return Err(precondition("build_code", format!("deg_G = {deg_g} must be ≤ n − 2 = {}", n - 2)));
        }
        let twist = evalset.twist_vector()?;
        let f = evalset.field();
        let rows = (0..=deg_g)
            .map(|j| {
                evalset
                    .points()
                    .iter()
                    .zip(&twist)
                    .map(|(&a, &v)| f.mul(v, f.pow(a, j as u64)))
                    .collect()
            })
            .collect();
        let gen = Mat::from_rows(f.clone(), n, rows)?;
        let code = LinearCode::new(gen)?.with_distance(DistanceClaim {
            d: n - deg_g,
            provenance: Provenance::Structural,
        });
        Ok(TwistedAgCode { evalset: evalset.clone(), deg_g, twist, code })
    }

    pub fn evalset(&self) -> &EvalSet {
        &self.evalset
    }

    pub fn deg_g(&self) -> usize {
        self.deg_g
    }

    pub fn twist(&self) -> &[Elem] {
        &self.twist
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn code_mut(&mut self) -> &mut LinearCode {
        &mut self.code
    }

    pub fn n(&self) -> usize {
        self.evalset.len()
    }

    /// Code dimension deg_g + 1.
    pub fn k(&self) -> usize {
        self.deg_g + 1
    }
}

/// Every evaluation set the three families produce for GF(q²), including
/// those whose residues fail the norm condition.
pub fn all_evalsets(field: &Arc<FieldCtx>) -> Vec<EvalSet> {
    let ord = field.group_order() as usize;
    let q = field.q() as usize;
    let mut out = Vec::new();
    for n in 2..field.size() as usize {
        if ord % (n - 1) == 0 {
            out.extend(EvalSet::subgroup(field, n).ok());
        }
    }
    for n0 in 1..q {
        out.extend(EvalSet::affine(field, n0).ok());
    }
    for s in (1..=ord).filter(|s| ord % s == 0) {
        for t in 1..q {
            out.extend(EvalSet::cosets(field, s, t).ok());
        }
    }
    out
}
