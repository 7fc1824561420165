//! Entanglement-assisted quantum code parameters from classical codes with
//! known Hermitian hull, Singleton-type MDS classification, propagation and
//! hull-dimension reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::galois::gcd;
use crate::lincode::LinearCode;
use crate::matrix::Mat;

/// `bound − κ` as a reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slack {
    pub num: i64,
    pub den: i64,
}

impl Slack {
    fn new(num: i64, den: i64) -> Slack {
        assert!(den > 0);
        let g = gcd(num.unsigned_abs(), den as u64).max(1) as i64;
        Slack { num: num / g, den: den / g }
    }

    pub fn is_tight(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Slack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// An [[n, κ, δ; c]]_q entanglement-assisted code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub q: u32,
    pub n: usize,
    pub kappa: usize,
    pub delta: usize,
    pub c: usize,
    pub mds: bool,
    /// One entry per Singleton-type bound; `None` where the bound does not apply.
    pub slack: [Option<Slack>; 3],
}

impl EaqeccParams {
    /// Unclassified record; call [`classify_mds`] to fill `mds` and `slack`.
    pub fn raw(q: u32, n: usize, kappa: usize, delta: usize, c: usize) -> EaqeccParams {
        EaqeccParams { q, n, kappa, delta, c, mds: false, slack: [None; 3] }
    }

    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.n, self.kappa, self.delta, self.c)
    }
}

impl fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]_{}", self.n, self.kappa, self.delta, self.c, self.q)?;
        if self.mds {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// The three Singleton-type bounds; MDS means equality in at least one.
///
/// 1. κ ≤ c + max{0, n − 2δ + 2}
/// 2. κ ≤ n − δ + 1
/// 3. κ ≤ (n − δ + 1)(c + 2δ − 2 − n)/(3δ − 3 − n), only when 2(δ − 1) ≥ n
pub fn classify_mds(p: EaqeccParams) -> EaqeccParams {
    let (n, kappa, delta, c) = (p.n as i64, p.kappa as i64, p.delta as i64, p.c as i64);
    let first = Slack::new(c + 0.max(n - 2 * delta + 2) - kappa, 1);
    let second = Slack::new(n - delta + 1 - kappa, 1);
    let third = (2 * (delta - 1) >= n && n > 0).then(|| {
        let den = 3 * delta - 3 - n;
        Slack::new((n - delta + 1) * (c + 2 * delta - 2 - n) - kappa * den, den)
    });
    let slack = [Some(first), Some(second), third];
    let mds = slack.iter().flatten().any(Slack::is_tight);
    EaqeccParams { mds, slack, ..p }
}

/// EAQECC from an [n, k, d] code over GF(q²) whose Hermitian hull has
/// dimension `ell`: c = n − k − ℓ and κ = 2k − n + c = k − ℓ, δ = d.
pub fn derive_eaqecc(n: usize, k: usize, d: usize, ell: usize, q: u32) -> Result<EaqeccParams> {
    const CTX: &str = "derive_eaqecc";
    if k > n {
        return Err(precondition(CTX, format!("k = {k} exceeds n = {n}")));
    }
    if ell > k.min(n - k) {
        return Err(precondition(CTX, format!("ℓ = {ell} exceeds min(k, n − k) = {}", k.min(n - k))));
    }
    if d == 0 || d > n {
        return Err(precondition(CTX, format!("distance {d} outside 1..={n}")));
    }
    let c = n - k - ell;
    let kappa = k - ell;
    Ok(classify_mds(EaqeccParams::raw(q, n, kappa, d, c)))
}

/// Both codes obtainable from an MDS [n, deg_g + 1, n − deg_g] code with
/// hull dimension `ell`: Q₁ from the code itself and Q₂ from its Hermitian
/// dual, an MDS [n, n − deg_g − 1, deg_g + 2] code with the same hull.
pub fn derive_pair_params(q: u32, n: usize, deg_g: usize, ell: usize) -> Result<(EaqeccParams, EaqeccParams)> {
    if deg_g + 2 > n {
        return Err(precondition("derive_pair", format!("deg_G = {deg_g} must be ≤ n − 2 = {}", n as i64 - 2)));
    }
    let q1 = derive_eaqecc(n, deg_g + 1, n - deg_g, ell, q)?;
    let q2 = derive_eaqecc(n, n - deg_g - 1, deg_g + 2, ell, q)?;
    Ok((q1, q2))
}

/// [`derive_pair_params`] for a concrete code, using its exact hull dimension.
///
/// The code must carry a distance claim equal to n − k + 1.
pub fn derive_pair(code: &LinearCode) -> Result<(EaqeccParams, EaqeccParams)> {
    let (n, k) = (code.n(), code.k());
    match code.distance() {
        Some(claim) if claim.d == n - k + 1 => {}
        other => {
            return Err(precondition(
                "derive_pair",
                format!("needs an MDS distance claim d = {}, have {:?}", n - k + 1, other.map(|c| c.d)),
            ))
        }
    }
    if k == 0 {
        return Err(precondition("derive_pair", "zero-dimensional code"));
    }
    derive_pair_params(code.field().q(), n, k - 1, code.hull_dim())
}

/// [[n, κ + i, δ; c + i]] for i = 1..=ell.
///
/// Valid when `p` is pure to δ; purity is taken as a hypothesis and not
/// checked here.
pub fn propagate(p: &EaqeccParams, ell: usize) -> Vec<EaqeccParams> {
    (1..=ell)
        .map(|i| classify_mds(EaqeccParams::raw(p.q, p.n, p.kappa + i, p.delta, p.c + i)))
        .collect()
}

/// [[n − c, n − 2(δ − 1), δ; c]] obtained by shortening an [[n, n − 2(δ − 1), δ]] code.
pub fn ghw_shorten(q: u32, n: usize, delta: usize, c: usize) -> Result<EaqeccParams> {
    const CTX: &str = "ghw_shorten";
    if delta == 0 {
        return Err(precondition(CTX, "δ must be at least 1"));
    }
    if 2 * (delta - 1) > n {
        return Err(precondition(CTX, format!("κ = n − 2(δ − 1) = {} is negative", n as i64 - 2 * (delta as i64 - 1))));
    }
    if c > n {
        return Err(precondition(CTX, format!("c = {c} exceeds n = {n}")));
    }
    Ok(classify_mds(EaqeccParams::raw(q, n - c, n - 2 * (delta - 1), delta, c)))
}

/// Monomially equivalent code with Hermitian hull dimension exactly `target`.
///
/// Let H be the reduced echelon basis of the hull, with pivot columns
/// p₁ < … < p_h, and complete it to a basis of the code whose extra rows
/// vanish on those columns. In that basis the Gram matrix is diag(0, M) with
/// M of full rank k − h. Multiplying columns p₁..p_{h−target} by α adds
/// (α^{q+1} − 1) on the corresponding diagonal entries, so the rank grows by
/// exactly h − target as long as α^{q+1} ≠ 1. Column scaling keeps [n, k] and
/// every codeword weight.
pub fn reduce_hull(code: &LinearCode, target: usize) -> Result<LinearCode> {
    const CTX: &str = "reduce_hull";
    let f = code.field().clone();
    let h = code.hull_dim();
    if target > h {
        return Err(precondition(CTX, format!("target {target} exceeds hull dimension {h}")));
    }
    if target == h {
        return Ok(code.clone());
    }
    let alpha = f.theta();
    if f.norm(alpha) == f.from_int(1) {
        return Err(precondition(CTX, format!("no α with α^(q+1) ≠ 1 in GF({})", f.size())));
    }

    let (hull, pivots) = code.hull_basis_oracle().rref();
    let hull = hull.select_rows(&(0..h).collect::<Vec<_>>());
    debug_assert_eq!(pivots.len(), h);

    // Completion rows, cleared on the hull pivot columns.
    let mut basis = hull.row_vecs();
    let mut rank = h;
    for row in code.generator().row_vecs() {
        let mut r = row;
        for (i, &p) in pivots.iter().enumerate() {
            let coef = r[p];
            if !coef.is_zero() {
                for (x, &y) in r.iter_mut().zip(hull.row(i)) {
                    *x = f.sub(*x, f.mul(coef, y));
                }
            }
        }
        let mut trial = basis.clone();
        trial.push(r.clone());
        let m = Mat::from_rows(f.clone(), code.n(), trial)?;
        if m.rank() > rank {
            rank += 1;
            basis.push(r);
        }
        if rank == code.k() {
            break;
        }
    }
    if rank != code.k() {
        return Err(Error::RankDeficient { rank, rows: code.k() });
    }

    let mut v = vec![f.from_int(1); code.n()];
    for &p in &pivots[..h - target] {
        v[p] = alpha;
    }
    let generator = Mat::from_rows(f.clone(), code.n(), basis)?.scale_columns(&v)?;
    let mut out = LinearCode::new(generator)?;
    if let Some(claim) = code.distance() {
        out = out.with_distance(claim);
    }
    Ok(out)
}
