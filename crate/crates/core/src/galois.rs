//! Arithmetic in GF(q²) ⊃ GF(q) ⊃ GF(p) for the small fields used here.
//!
//! Elements are stored as discrete logarithms with respect to θ, the root of
//! the Conway polynomial of degree 2m over GF(p). Multiplication is exponent
//! addition, addition goes through Zech logarithms. The base-p polynomial
//! representation ("packed" integer) is kept alongside so both routes can be
//! cross-checked.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Conway polynomials, coefficients low to high, monic.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

pub const SUPPORTED_Q: &[u32] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// An element of GF(q²): `None` is zero, `Some(e)` is θ^e with 0 ≤ e < q²−1.
///
/// The derived order puts zero first and then sorts by discrete log, which is
/// the canonical point order used throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(Option<u16>);

impl Elem {
    pub const ZERO: Elem = Elem(None);
    pub const ONE: Elem = Elem(Some(0));

    pub fn is_zero(self) -> bool {
        self.0.is_none()
    }

    pub fn dlog(self) -> Option<u32> {
        self.0.map(u32::from)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "0"),
            Some(e) => write!(f, "θ^{e}"),
        }
    }
}

/// The tower GF(p) ⊂ GF(q) ⊂ GF(q²) with q = p^m.
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    q2: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<Option<u16>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q2", &self.q2)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FieldCtx {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl FieldCtx {
    /// Builds GF(q²) for q = p^m from the embedded Conway table.
    pub fn new(p: u32, m: u32) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        if m == 0 || m > 4 {
            return Err(Error::UnsupportedField { p, m });
        }
        let q = p.pow(m);
        if !SUPPORTED_Q.contains(&q) {
            return Err(Error::UnsupportedField { p, m });
        }
        let degree = 2 * m;
        let modulus = CONWAY
            .iter()
            .find(|(cp, cd, _)| *cp == p && *cd == degree)
            .map(|(_, _, c)| c.to_vec())
            .ok_or(Error::UnsupportedField { p, m })?;
        let q2 = q * q;
        let order = (q2 - 1) as usize;
        let d = degree as usize;

        let pack = |digits: &[u32]| digits.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        let mut exp = Vec::with_capacity(order);
        let mut log = vec![u32::MAX; q2 as usize];
        let mut cur = vec![0u32; d];
        cur[0] = 1;
        for e in 0..order {
            let packed = pack(&cur);
            assert_eq!(log[packed as usize], u32::MAX, "Conway polynomial not primitive");
            log[packed as usize] = e as u32;
            exp.push(packed);
            // multiply by x modulo the monic modulus
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = (cur[i - 1] + p * p - (top * modulus[i]) % p) % p;
            }
            cur[0] = (p - (top * modulus[0]) % p) % p;
        }
        assert_eq!(pack(&cur), 1, "θ^(q²−1) must be 1");

        let mut ctx = FieldCtx {
            p,
            m,
            q,
            q2,
            modulus,
            exp,
            log,
            zech: Vec::new(),
        };
        ctx.zech = (0..order as u32)
            .map(|e| {
                let sum = ctx.packed_add(ctx.exp[e as usize], 1);
                if sum == 0 {
                    None
                } else {
                    Some(ctx.log[sum as usize] as u16)
                }
            })
            .collect();
        Ok(Arc::new(ctx))
    }

    /// Builds GF(q²) from q itself.
    pub fn for_q(q: u32) -> Result<Arc<FieldCtx>> {
        let (p, m) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            7 => (7, 1),
            8 => (2, 3),
            9 => (3, 2),
            11 => (11, 1),
            13 => (13, 1),
            16 => (2, 4),
            _ => return Err(Error::UnsupportedQ(q)),
        };
        FieldCtx::new(p, m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Field size q².
    pub fn size(&self) -> u32 {
        self.q2
    }

    /// Order q²−1 of the multiplicative group.
    pub fn group_order(&self) -> u32 {
        self.q2 - 1
    }

    /// Conway modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn packed_add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn theta(&self) -> Elem {
        self.theta_pow(1)
    }

    /// θ^e for any integer e.
    pub fn theta_pow(&self, e: i64) -> Elem {
        let ord = self.group_order() as i64;
        Elem(Some(e.rem_euclid(ord) as u16))
    }

    /// Base-p polynomial representation of x as a packed integer.
    pub fn to_packed(&self, x: Elem) -> u32 {
        match x.0 {
            None => 0,
            Some(e) => self.exp[e as usize],
        }
    }

    pub fn from_packed(&self, packed: u32) -> Result<Elem> {
        if packed >= self.q2 {
            return Err(Error::ParseElement(format!("packed {packed}")));
        }
        Ok(if packed == 0 {
            Elem::ZERO
        } else {
            Elem(Some(self.log[packed as usize] as u16))
        })
    }

    /// Image of an integer in the prime subfield GF(p).
    pub fn from_int(&self, value: i64) -> Elem {
        let r = value.rem_euclid(self.p as i64) as u32;
        self.from_packed(r).expect("r < p")
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match (a.0, b.0) {
            (None, _) => b,
            (_, None) => a,
            (Some(x), Some(y)) => {
                let ord = self.group_order();
                let diff = (y as u32 + ord - x as u32) % ord;
                match self.zech[diff as usize] {
                    None => Elem::ZERO,
                    Some(z) => Elem(Some(((x as u32 + z as u32) % ord) as u16)),
                }
            }
        }
    }

    /// Addition through the polynomial representation; independent of the
    /// Zech table and used to validate it.
    pub fn add_via_poly(&self, a: Elem, b: Elem) -> Elem {
        let s = self.packed_add(self.to_packed(a), self.to_packed(b));
        self.from_packed(s).expect("sum stays in range")
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match a.0 {
            None => a,
            Some(_) if self.p == 2 => a,
            Some(e) => {
                let ord = self.group_order();
                Elem(Some(((e as u32 + ord / 2) % ord) as u16))
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match (a.0, b.0) {
            (Some(x), Some(y)) => {
                Elem(Some(((x as u32 + y as u32) % self.group_order()) as u16))
            }
            _ => Elem::ZERO,
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        match a.0 {
            None => Err(Error::ZeroElement),
            Some(e) => Ok(self.theta_pow(-(e as i64))),
        }
    }

    /// a / b, panicking on b = 0 (callers guarantee a nonzero divisor).
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    /// x^e with the convention 0^0 = 1.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        match x.0 {
            None if e == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(l) => {
                let ord = self.group_order() as u64;
                Elem(Some(((l as u64 * (e % ord)) % ord) as u16))
            }
        }
    }

    /// Hermitian conjugation x ↦ x^q.
    pub fn conjugate(&self, x: Elem) -> Elem {
        self.pow(x, self.q as u64)
    }

    /// Norm x ↦ x^{q+1} onto GF(q).
    pub fn norm(&self, x: Elem) -> Elem {
        self.pow(x, self.q as u64 + 1)
    }

    pub fn is_in_subfield(&self, x: Elem) -> bool {
        match x.0 {
            None => true,
            Some(e) => e as u32 % (self.q + 1) == 0,
        }
    }

    /// Canonical v with v^{q+1} = c: the smallest exponent solution.
    pub fn solve_norm(&self, c: Elem) -> Result<Elem> {
        match c.0 {
            None => Ok(Elem::ZERO),
            Some(e) if e as u32 % (self.q + 1) == 0 => {
                Ok(Elem(Some((e as u32 / (self.q + 1)) as u16)))
            }
            Some(_) => Err(Error::NotInSubfield(self.format_elem(c))),
        }
    }

    pub fn mult_order(&self, x: Elem) -> Result<u64> {
        let e = x.dlog().ok_or(Error::ZeroElement)? as u64;
        let ord = self.group_order() as u64;
        Ok(ord / gcd(e, ord))
    }

    /// All q² elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain((0..self.group_order()).map(|e| self.theta_pow(e as i64)))
    }

    /// The q elements of GF(q) in canonical order: 0, then ascending exponent.
    pub fn subfield_elements(&self) -> Vec<Elem> {
        std::iter::once(Elem::ZERO)
            .chain((0..self.q - 1).map(|j| self.theta_pow((j * (self.q + 1)) as i64)))
            .collect()
    }

    /// Text encoding: "0", prime-subfield integers, otherwise "t^e".
    pub fn format_elem(&self, x: Elem) -> String {
        let packed = self.to_packed(x);
        if packed < self.p {
            packed.to_string()
        } else {
            format!("t^{}", x.dlog().expect("nonzero"))
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let bad = || Error::ParseElement(s.to_string());
        let s = s.trim();
        let rest = s
            .strip_prefix('t')
            .or_else(|| s.strip_prefix('θ'));
        if let Some(rest) = rest {
            if rest.is_empty() {
                return Ok(self.theta());
            }
            let e: i64 = rest
                .strip_prefix('^')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            return Ok(self.theta_pow(e));
        }
        let v: u32 = s.parse().map_err(|_| bad())?;
        if v >= self.p {
            return Err(bad());
        }
        self.from_packed(v)
    }
}
