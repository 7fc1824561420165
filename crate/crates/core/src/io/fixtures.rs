//! The two published [25, 11, 15] generator matrices over GF(49), stored as
//! the 11×14 non-identity block A of (I₁₁ | A).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};
use crate::lincode::LinearCode;
use crate::matrix::Mat;

const A1: &str = include_str!("../../data/a1.txt");
const A2: &str = include_str!("../../data/a2.txt");

pub const FIXTURE_N: usize = 25;
pub const FIXTURE_K: usize = 11;
pub const FIXTURE_D: usize = 15;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    A1,
    A2,
}

impl Fixture {
    pub const ALL: [Fixture; 2] = [Fixture::A1, Fixture::A2];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::A1 => "a1",
            Fixture::A2 => "a2",
        }
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    pub fn source(self) -> &'static str {
        match self {
            Fixture::A1 => A1,
            Fixture::A2 => A2,
        }
    }

    pub fn expected_hull(self) -> usize {
        match self {
            Fixture::A1 => 6,
            Fixture::A2 => 4,
        }
    }

    /// The code generated by (I₁₁ | A).
    pub fn code(self) -> Result<LinearCode> {
        code_from_block(&FieldCtx::for_q(7)?, self.source())
    }
}

/// Parses whitespace-separated element rows; `#` starts a comment line.
pub fn parse_block(field: &std::sync::Arc<FieldCtx>, text: &str) -> Result<Mat> {
    let rows: Vec<Vec<Elem>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|s| field.parse_elem(s)).collect())
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Document("ragged fixture block".into()));
    }
    Mat::from_rows(field.clone(), cols, rows)
}

pub fn code_from_block(field: &std::sync::Arc<FieldCtx>, text: &str) -> Result<LinearCode> {
    let a = parse_block(field, text)?;
    let g = Mat::identity(field.clone(), a.rows()).hstack(&a)?;
    LinearCode::new(g)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: usize,
    pub actual: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub checks: Vec<Check>,
    pub samples: usize,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Length, dimension, exact hull and a sampled lower bound on the weight.
pub fn verify_block(name: &str, text: &str, expected_hull: usize, samples: usize, seed: u64) -> Result<FixtureReport> {
    let f = FieldCtx::for_q(7)?;
    let code = code_from_block(&f, text)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = code.sampled_min_weight(samples, &mut rng);
    let check = |name: &str, expected: usize, actual: usize, passed: bool| Check {
        name: name.to_string(),
        expected,
        actual,
        passed,
    };
    let checks = vec![
        check("length", FIXTURE_N, code.n(), code.n() == FIXTURE_N),
        check("dimension", FIXTURE_K, code.k(), code.k() == FIXTURE_K),
        check("hull dimension", expected_hull, code.hull_dim(), code.hull_dim() == expected_hull),
        check("sampled min weight ≥", FIXTURE_D, weight, weight >= FIXTURE_D),
    ];
    Ok(FixtureReport { fixture: name.to_string(), checks, samples })
}

pub fn verify(fixture: Fixture, samples: usize, seed: u64) -> Result<FixtureReport> {
    verify_block(fixture.name(), fixture.source(), fixture.expected_hull(), samples, seed)
}
