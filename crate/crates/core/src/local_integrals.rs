//! The unramified Tate integral `∫ |t|^z φ(t) d^×t` as a formal rational
//! function of `X = q^{-z}`.
//!
//! The multiplicative Haar measure gives the unit group volume 1, so the
//! shell `ϖ^k O^×` contributes `X^k` and the lattice `ϖ^k O` contributes
//! the geometric series `X^k/(1−X)`, convergent for `Re z > 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::AffineForm;
use crate::rational::{fmt_q, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "k")]
pub enum ShellFunction {
    /// Characteristic function of `ϖ^k O`.
    Lattice(i64),
    /// Characteristic function of `ϖ^k O^×`.
    Shell(i64),
}

/// Laurent polynomial in `X`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn monomial(c: Q, k: i64) -> Self {
        let mut out = Self::default();
        if !c.is_zero() {
            out.coeffs.insert(k, c);
        }
        out
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            let slot = out.coeffs.entry(k).or_insert_with(Q::zero);
            *slot += c;
            if slot.is_zero() {
                out.coeffs.remove(&k);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                out = out.add(&Self::monomial(x * y, a + b));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (&k, c) in &self.coeffs {
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => fmt_q(&mag),
                (1, true) => "X".into(),
                (1, false) => format!("{}*X", fmt_q(&mag)),
                (_, true) => format!("X^{k}"),
                (_, false) => format!("{}*X^{k}", fmt_q(&mag)),
            };
            match (out.is_empty(), c.is_negative()) {
                (true, false) => {}
                (true, true) => out.push('-'),
                (false, false) => out.push_str(" + "),
                (false, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

/// `num / den` with `den` nonzero; equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalX {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalX {
    pub fn poly(p: LaurentPoly) -> Self {
        RationalX {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalX {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&RationalX {
            num: other.num.neg(),
            den: other.den.clone(),
        })
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalX {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RationalX {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `1 − X`.
pub fn one_minus_x() -> LaurentPoly {
    LaurentPoly::one().add(&LaurentPoly::monomial(qi(-1), 1))
}

/// The local zeta factor `1/(1 − X)`.
pub fn local_zeta() -> RationalX {
    RationalX {
        num: LaurentPoly::one(),
        den: one_minus_x(),
    }
}

#[derive(Clone, Debug)]
pub struct TateIntegral {
    pub function: ShellFunction,
    pub z: AffineForm,
    pub value: RationalX,
    pub convergence: String,
}

impl TateIntegral {
    /// Whether the value is `ζ_ν(z) = 1/(1 − q^{-z})`.
    pub fn is_local_zeta(&self) -> bool {
        self.value == local_zeta()
    }
}

pub fn tate_integral(f: ShellFunction, z: &AffineForm) -> TateIntegral {
    let value = match f {
        ShellFunction::Shell(k) => RationalX::poly(LaurentPoly::monomial(Q::one(), k)),
        ShellFunction::Lattice(k) => RationalX {
            num: LaurentPoly::monomial(Q::one(), k),
            den: one_minus_x(),
        },
    };
    TateIntegral {
        function: f,
        z: z.clone(),
        value,
        convergence: format!("Re({z}) > 0"),
    }
}
