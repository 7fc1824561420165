//! Linear codes over GF(q²): Hermitian duals, hulls, scaling and distance checks.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::galois::{Elem, FieldCtx};
use crate::matrix::Mat;

/// Environment variable overriding both exhaustive-check budgets.
pub const BUDGET_ENV: &str = "HULLFORGE_BUDGET";

/// Limits on exponential-time checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of k×k minors examined by [`LinearCode::is_mds_minors`].
    pub minors: u64,
    /// Maximum number of messages enumerated by [`LinearCode::min_weight_enum`].
    pub messages: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // C(16, 8): every k for n ≤ 16
        Budget { minors: 12_870, messages: 1 << 24 }
    }
}

impl Budget {
    pub fn from_env() -> Budget {
        match std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            Some(b) => Budget { minors: b, messages: b },
            None => Budget::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Implied by the construction (GRS codes are MDS).
    Structural,
    /// Confirmed by an exhaustive check.
    Verified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceClaim {
    pub d: usize,
    pub provenance: Provenance,
}

/// A linear [n, k] code given by a full-rank k×n generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Mat,
    distance: Option<DistanceClaim>,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl LinearCode {
    pub fn new(generator: Mat) -> Result<LinearCode> {
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::RankDeficient { rank, rows: generator.rows() });
        }
        Ok(LinearCode { generator, distance: None })
    }

    /// The code spanned by the rows of `m`, whatever its rank.
    pub fn spanned_by(m: &Mat) -> LinearCode {
        LinearCode { generator: m.row_basis(), distance: None }
    }

    pub fn with_distance(mut self, claim: DistanceClaim) -> LinearCode {
        self.distance = Some(claim);
        self
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn distance(&self) -> Option<DistanceClaim> {
        self.distance
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        self.generator.vec_mul(message)
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.k() == other.k()
            && self.generator.contains_rowspace(&other.generator)
            && other.generator.contains_rowspace(&self.generator)
    }

    /// { y : Σ xᵢ yᵢ^q = 0 for all x ∈ C }, the kernel of the conjugated generator.
    pub fn hermitian_dual(&self) -> LinearCode {
        LinearCode { generator: self.generator.conjugate().kernel_basis(), distance: None }
    }

    pub fn euclidean_dual(&self) -> LinearCode {
        LinearCode { generator: self.generator.kernel_basis(), distance: None }
    }

    /// G · conj(G)ᵀ.
    pub fn hermitian_gram(&self) -> Mat {
        self.generator
            .mul(&self.generator.conjugate().transpose())
            .expect("square product")
    }

    /// dim(C ∩ C^⊥H) = k − rank(G · conj(G)ᵀ).
    pub fn hull_dim(&self) -> usize {
        self.k() - self.hermitian_gram().rank()
    }

    /// Explicit basis of C ∩ C^⊥H via subspace intersection. Independent of
    /// the rank formula in [`LinearCode::hull_dim`].
    pub fn hull_basis_oracle(&self) -> Mat {
        self.generator
            .rowspace_intersection(self.hermitian_dual().generator())
            .expect("same length")
    }

    /// Coordinatewise scaling v·C.
    pub fn scale(&self, v: &[Elem]) -> Result<LinearCode> {
        if v.len() != self.n() {
            return Err(Error::Dimension(format!("scale vector of length {} for n = {}", v.len(), self.n())));
        }
        if let Some(i) = v.iter().position(|x| x.is_zero()) {
            return Err(precondition("scale_code", format!("zero entry at position {i}")));
        }
        Ok(LinearCode { generator: self.generator.scale_columns(v)?, distance: self.distance })
    }

    /// True iff every k×k minor of G is nonsingular.
    pub fn is_mds_minors(&self, budget: Budget) -> Result<bool> {
        let (n, k) = (self.n(), self.k());
        let count = binomial(n, k);
        if count > budget.minors as u128 {
            return Err(Error::BudgetExceeded { what: "k×k minors", needed: count, budget: budget.minors });
        }
        if k == 0 {
            return Ok(true);
        }
        let mut cols: Vec<usize> = (0..k).collect();
        loop {
            if self.generator.select_columns(&cols).rank() < k {
                return Ok(false);
            }
            // next k-combination of 0..n
            let Some(i) = (0..k).rev().find(|&i| cols[i] < n - k + i) else {
                return Ok(true);
            };
            cols[i] += 1;
            for j in i + 1..k {
                cols[j] = cols[j - 1] + 1;
            }
        }
    }

    /// Runs [`LinearCode::is_mds_minors`] and records a verified distance on success.
    pub fn verify_mds(&mut self, budget: Budget) -> Result<bool> {
        let ok = self.is_mds_minors(budget)?;
        if ok {
            self.distance = Some(DistanceClaim { d: self.n() - self.k() + 1, provenance: Provenance::Verified });
        }
        Ok(ok)
    }

    /// Exact minimum weight by enumerating messages whose first nonzero
    /// coordinate is 1 (weights are invariant under scalar multiples).
    pub fn min_weight_enum(&self, budget: Budget) -> Result<usize> {
        let f = self.field().clone();
        let k = self.k();
        if k == 0 {
            return Err(precondition("min_weight_enum", "zero code has no nonzero codewords"));
        }
        let qq = f.size() as u128;
        let needed = qq.checked_pow(k as u32).unwrap_or(u128::MAX);
        if needed > budget.messages as u128 {
            return Err(Error::BudgetExceeded { what: "messages", needed, budget: budget.messages });
        }
        let elems: Vec<Elem> = f.elements().collect();
        let mut best = self.n();
        for lead in 0..k {
            // message = (0,…,0,1,x_{lead+1},…,x_{k−1})
            let tail = k - lead - 1;
            let mut digits = vec![0usize; tail];
            let mut word: Vec<Elem> = self.generator.row(lead).to_vec();
            loop {
                let w = word.iter().filter(|x| !x.is_zero()).count();
                best = best.min(w);
                // odometer increment with incremental codeword update
                let mut pos = 0;
                loop {
                    if pos == tail {
                        break;
                    }
                    let row = self.generator.row(lead + 1 + pos);
                    let old = elems[digits[pos]];
                    digits[pos] = (digits[pos] + 1) % elems.len();
                    let delta = f.sub(elems[digits[pos]], old);
                    for (c, &g) in word.iter_mut().zip(row) {
                        *c = f.add(*c, f.mul(delta, g));
                    }
                    if digits[pos] != 0 {
                        break;
                    }
                    pos += 1;
                }
                if pos == tail {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// Minimum weight over `samples` uniformly random nonzero codewords.
    pub fn sampled_min_weight<R: Rng>(&self, samples: usize, rng: &mut R) -> usize {
        let f = self.field();
        let size = f.size() as i64;
        let mut best = self.n();
        let mut drawn = 0;
        while drawn < samples {
            let msg: Vec<Elem> = (0..self.k())
                .map(|_| match rng.gen_range(0..size) {
                    0 => Elem::ZERO,
                    e => f.theta_pow(e - 1),
                })
                .collect();
            if msg.iter().all(|x| x.is_zero()) {
                continue;
            }
            let w = self.encode(&msg).iter().filter(|x| !x.is_zero()).count();
            best = best.min(w);
            drawn += 1;
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_code(f: &Arc<FieldCtx>, k: usize, n: usize, rng: &mut ChaCha8Rng) -> LinearCode {
        loop {
            let data = (0..k * n)
                .map(|_| match rng.gen_range(0..f.size() as i64) {
                    0 => Elem::ZERO,
                    e => f.theta_pow(e),
                })
                .collect();
            if let Ok(c) = LinearCode::new(Mat::new(f.clone(), k, n, data).unwrap()) {
                return c;
            }
        }
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let f = FieldCtx::for_q(3).unwrap();
        let c = LinearCode::new(Mat::identity(f, 4)).unwrap();
        assert_eq!(c.hermitian_dual().k(), 0);
        assert_eq!(c.hull_dim(), 0);
    }

    #[test]
    fn dual_dimensions_add_up() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 3] {
            let f = FieldCtx::for_q(q).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(2..9);
                let k = rng.gen_range(1..=n);
                let c = random_code(&f, k, n, &mut rng);
                let d = c.hermitian_dual();
                assert_eq!(c.k() + d.k(), n);
                assert!(c.generator().mul(&d.generator().conjugate().transpose()).unwrap().is_zero());
                assert_eq!(c.hull_dim(), d.hull_dim());
            }
        }
    }

    #[test]
    fn self_orthogonal_code_has_full_hull() {
        // (1, θ^{(q−1)/2·…}) style: over GF(4), (1,1) has ⟨x,x⟩ = 1 + 1 = 0
        let f = FieldCtx::for_q(2).unwrap();
        let g = Mat::from_rows(f.clone(), 2, vec![vec![Elem::ONE, Elem::ONE]]).unwrap();
        let c = LinearCode::new(g).unwrap();
        assert_eq!(c.hull_dim(), 1);
        assert_eq!(c.hull_basis_oracle().rows(), 1);
    }

    #[test]
    fn zero_hull_random_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = FieldCtx::for_q(3).unwrap();
        let c = loop {
            let c = random_code(&f, 3, 6, &mut rng);
            if c.hull_dim() == 0 {
                break c;
            }
        };
        assert_eq!(c.hull_basis_oracle().rows(), 0);
    }

    #[test]
    fn scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FieldCtx::for_q(3).unwrap();
        let c = random_code(&f, 2, 5, &mut rng);
        assert_eq!(c.scale(&vec![Elem::ONE; 5]).unwrap(), c);
        let v: Vec<Elem> = (0..5).map(|i| f.theta_pow(i * 3 + 1)).collect();
        let inv: Vec<Elem> = v.iter().map(|&x| f.inv(x).unwrap()).collect();
        let back = c.scale(&v).unwrap().scale(&inv).unwrap();
        assert!(back.same_code(&c));
        let mut bad = v.clone();
        bad[2] = Elem::ZERO;
        assert!(c.scale(&bad).is_err());
        assert!(c.scale(&v[..4]).is_err());
    }

    #[test]
    fn scaling_preserves_weights_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = FieldCtx::for_q(3).unwrap();
        for k in 1..=3 {
            let c = random_code(&f, k, 6, &mut rng);
            let v: Vec<Elem> = (0..6).map(|_| f.theta_pow(rng.gen_range(0..8))).collect();
            let s = c.scale(&v).unwrap();
            let elems: Vec<Elem> = f.elements().collect();
            let mut msg = vec![0usize; k];
            loop {
                let m: Vec<Elem> = msg.iter().map(|&i| elems[i]).collect();
                let w1 = c.encode(&m).iter().filter(|x| !x.is_zero()).count();
                let w2 = s.encode(&m).iter().filter(|x| !x.is_zero()).count();
                assert_eq!(w1, w2);
                let Some(p) = msg.iter().position(|&d| d + 1 < elems.len()) else { break };
                msg[p] += 1;
                msg[..p].iter_mut().for_each(|d| *d = 0);
            }
            assert_eq!(c.is_mds_minors(Budget::default()).unwrap(), s.is_mds_minors(Budget::default()).unwrap());
        }
    }

    #[test]
    fn mds_minors_examples() {
        let f = FieldCtx::for_q(3).unwrap();
        let row = vec![Elem::ONE, f.theta(), f.theta_pow(5), Elem::ONE];
        let c = LinearCode::new(Mat::from_rows(f.clone(), 4, vec![row]).unwrap()).unwrap();
        assert!(c.is_mds_minors(Budget::default()).unwrap());
        let g = Mat::from_rows(
            f.clone(),
            3,
            vec![vec![Elem::ONE, Elem::ZERO, Elem::ONE], vec![Elem::ZERO, Elem::ZERO, Elem::ONE]],
        )
        .unwrap();
        assert!(!LinearCode::new(g).unwrap().is_mds_minors(Budget::default()).unwrap());
        let big = LinearCode::new(Mat::identity(f, 20)).unwrap();
        let tight = Budget { minors: 0, messages: 0 };
        assert!(matches!(big.is_mds_minors(tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn min_weight_examples() {
        let f = FieldCtx::for_q(3).unwrap();
        let rep = LinearCode::new(Mat::from_rows(f.clone(), 5, vec![vec![Elem::ONE; 5]]).unwrap()).unwrap();
        assert_eq!(rep.min_weight_enum(Budget::default()).unwrap(), 5);
        let mut row = vec![Elem::ONE; 5];
        row.push(Elem::ZERO);
        let aug = LinearCode::new(Mat::from_rows(f.clone(), 6, vec![row]).unwrap()).unwrap();
        assert_eq!(aug.min_weight_enum(Budget::default()).unwrap(), 5);
        let big = LinearCode::new(Mat::identity(f, 9)).unwrap();
        assert!(big.min_weight_enum(Budget::default()).is_err());
    }

    #[test]
    fn min_weight_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let f = FieldCtx::for_q(2).unwrap();
        for _ in 0..10 {
            let k = rng.gen_range(1..4);
            let c = random_code(&f, k, 6, &mut rng);
            let elems: Vec<Elem> = f.elements().collect();
            let mut best = usize::MAX;
            for idx in 1..elems.len().pow(k as u32) {
                let m: Vec<Elem> = (0..k).map(|i| elems[idx / elems.len().pow(i as u32) % elems.len()]).collect();
                best = best.min(c.encode(&m).iter().filter(|x| !x.is_zero()).count());
            }
            assert_eq!(c.min_weight_enum(Budget::default()).unwrap(), best);
            assert!(c.sampled_min_weight(200, &mut rng) >= best);
        }
    }

    #[test]
    fn mds_dual_is_mds() {
        // Vandermonde over GF(9), n = 8
        let f = FieldCtx::for_q(3).unwrap();
        let pts: Vec<Elem> = f.elements().take(8).collect();
        for k in 1..8 {
            let rows = (0..k).map(|j| pts.iter().map(|&a| f.pow(a, j as u64)).collect()).collect();
            let c = LinearCode::new(Mat::from_rows(f.clone(), 8, rows).unwrap()).unwrap();
            assert!(c.is_mds_minors(Budget::default()).unwrap());
            assert!(c.hermitian_dual().is_mds_minors(Budget::default()).unwrap());
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(16, 8), 12_870);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
        assert_eq!(binomial(10, 3), 120);
    }
}
