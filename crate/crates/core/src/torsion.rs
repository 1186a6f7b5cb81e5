//! Whitehead-torsion units of lens-space homotopy equivalences, the
//! Dennis-trace correction to the string cobracket, and the transformation
//! formula check
//!
//! `∨_{S¹} f_*(x) = f_* ∨_{S¹}(x) + π_* f_*(τ_*(x) ∧ d log τ(f))`.
//!
//! Units are given as quotients of binomials,
//! `(t^a - 1)(t^b - 1) / ((t^c - 1)(t^d - 1))`, divided exactly in `Z[t]`
//! and then reduced into `(Z/m)[t]/(t^n - 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::homotopy_equivalent;
use crate::cyclic_algebra::{check_multiplier, dennis_dlog, invert_unit, CyclicPoly};
use crate::equivariant::{cobracket_pi_y, project_pi, working_modulus, EqTensor};
use crate::error::{Error, Result};
use crate::loop_homology::{wedge_with_dlog, LensPair};

/// A quotient of products of binomials `t^e - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionExpr {
    pub numerator: Vec<u32>,
    pub denominator: Vec<u32>,
}

impl TorsionExpr {
    pub fn one() -> Self {
        Self {
            numerator: Vec::new(),
            denominator: Vec::new(),
        }
    }

    /// Exact quotient in `Z[t]`, lowest degree first.
    pub fn expand(&self) -> Result<Vec<i64>> {
        let mut num = vec![1i64];
        for &e in &self.numerator {
            num = mul_binomial(&num, e)?;
        }
        for &e in &self.denominator {
            num = div_binomial(&num, e).ok_or_else(|| {
                Error::InvalidTorsionExpression(format!("{self} leaves a nonzero remainder"))
            })?;
        }
        Ok(num)
    }

    /// The quotient in `(Z/m)[t]/(t^n - 1)`.
    pub fn reduce(&self, n: u32, m: u64) -> Result<CyclicPoly> {
        let coeffs = self.expand()?;
        Ok(CyclicPoly::from_terms(
            n,
            m,
            coeffs.into_iter().enumerate().map(|(a, c)| (a as i64, c)),
        ))
    }
}

fn mul_binomial(p: &[i64], e: u32) -> Result<Vec<i64>> {
    let e = e as usize;
    let mut out = vec![0i64; p.len() + e];
    for (i, &c) in p.iter().enumerate() {
        out[i + e] = out[i + e]
            .checked_add(c)
            .ok_or_else(|| Error::InvalidTorsionExpression("coefficient overflow".into()))?;
        out[i] -= c;
    }
    Ok(out)
}

/// `p / (t^e - 1)` when exact.
fn div_binomial(p: &[i64], e: u32) -> Option<Vec<i64>> {
    let e = e as usize;
    if p.len() <= e {
        return p.iter().all(|&c| c == 0).then(|| vec![0]);
    }
    let mut rem = p.to_vec();
    let mut q = vec![0i64; p.len() - e];
    for i in (e..rem.len()).rev() {
        let c = rem[i];
        if c != 0 {
            q[i - e] = c;
            rem[i] = 0;
            rem[i - e] += c;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(q)
}

fn fmt_factors(f: &mut fmt::Formatter<'_>, factors: &[u32]) -> fmt::Result {
    for e in factors {
        write!(f, "(t^{e}-1)")?;
    }
    Ok(())
}

impl fmt::Display for TorsionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator.is_empty() {
            f.write_str("1")?;
        } else {
            fmt_factors(f, &self.numerator)?;
        }
        match self.denominator.len() {
            0 => Ok(()),
            1 => {
                f.write_str("/")?;
                fmt_factors(f, &self.denominator)
            }
            _ => {
                f.write_str("/(")?;
                fmt_factors(f, &self.denominator)?;
                f.write_str(")")
            }
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn err(&self, what: &str) -> Error {
        Error::InvalidTorsionExpression(format!("{what} at byte {} of `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an exponent"))
    }

    /// `t^e-1` or `t-1`.
    fn binomial(&mut self) -> Result<u32> {
        self.expect(b't')?;
        let e = if self.eat(b'^') { self.number()? } else { 1 };
        self.expect(b'-')?;
        self.expect(b'1')?;
        if e == 0 {
            return Err(self.err("t^0-1 is zero"));
        }
        Ok(e)
    }

    /// `1`, a bare binomial, or a run of parenthesised binomials, optionally
    /// wrapped in one more pair of parentheses.
    fn product(&mut self) -> Result<Vec<u32>> {
        if self.eat(b'1') {
            return Ok(Vec::new());
        }
        if self.peek() == Some(b't') {
            return Ok(vec![self.binomial()?]);
        }
        let mut out = Vec::new();
        while self.eat(b'(') {
            if self.peek() == Some(b'(') {
                let inner = self.product()?;
                self.expect(b')')?;
                out.extend(inner);
            } else {
                out.push(self.binomial()?);
                self.expect(b')')?;
            }
        }
        if out.is_empty() {
            return Err(self.err("expected a factor"));
        }
        Ok(out)
    }
}

impl FromStr for TorsionExpr {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cur = Cursor {
            s: compact.as_bytes(),
            pos: 0,
            src,
        };
        let numerator = cur.product()?;
        let denominator = if cur.eat(b'/') {
            cur.product()?
        } else {
            Vec::new()
        };
        if cur.pos != cur.s.len() {
            return Err(cur.err("trailing input"));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }
}

/// A homotopy equivalence `L(n;k) → L(n;k')` sending the `l`-component to
/// the `s l`-component, with its torsion given as a binomial quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensMap {
    source: LensPair,
    target: LensPair,
    s: u32,
    expr: TorsionExpr,
}

impl LensMap {
    pub fn new(source: LensPair, target: LensPair, s: i64, expr: TorsionExpr) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::MismatchedSpaces {
                source_n: source.n(),
                target_n: target.n(),
            });
        }
        let n = source.n();
        let s = check_multiplier(s, n)? as u32;
        if !homotopy_equivalent(n, source.k() as i64, target.k() as i64)? {
            return Err(Error::NotHomotopyEquivalent {
                n,
                k: source.k(),
                k2: target.k(),
            });
        }
        let map = Self {
            source,
            target,
            s,
            expr,
        };
        map.torsion_unit()?;
        Ok(map)
    }

    /// `f: L(9;1) → L(9;4)`, `l ↦ 2l`, with
    /// `τ(f) = (t^7 - 1)(t - 1) / ((t - 1)(t - 1))`.
    pub fn nine_one_to_nine_four() -> Self {
        let expr = "(t^7-1)(t^1-1)/((t^1-1)(t^1-1))"
            .parse()
            .expect("valid expression");
        Self::new(
            LensPair::new(9, 1).expect("valid"),
            LensPair::new(9, 4).expect("valid"),
            2,
            expr,
        )
        .expect("L(9;1) and L(9;4) are homotopy equivalent")
    }

    pub fn identity(space: LensPair) -> Self {
        Self {
            source: space,
            target: space,
            s: 1,
            expr: TorsionExpr::one(),
        }
    }

    pub fn source(&self) -> &LensPair {
        &self.source
    }

    pub fn target(&self) -> &LensPair {
        &self.target
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn expr(&self) -> &TorsionExpr {
        &self.expr
    }

    /// Coefficient modulus used for torsion arithmetic: the working modulus
    /// of `n`, or `n` itself when that is trivial.
    pub fn modulus(&self) -> u64 {
        match working_modulus(self.source.n()) {
            1 => self.source.n() as u64,
            m => m,
        }
    }

    pub fn torsion_unit(&self) -> Result<TorsionUnit> {
        let unit = self.expr.reduce(self.source.n(), self.modulus())?;
        invert_unit(&unit)?;
        Ok(TorsionUnit {
            unit,
            provenance: self.expr.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionUnit {
    pub unit: CyclicPoly,
    pub provenance: String,
}

impl TorsionUnit {
    pub fn inverse(&self) -> Result<CyclicPoly> {
        invert_unit(&self.unit)
    }
}

/// `π_* f_*(τ_*(π_* y_l) ∧ d log u)` for a map `l ↦ s l` out of `source`.
pub fn correction_from_unit(
    source: &LensPair,
    s: i64,
    l: i64,
    unit: &CyclicPoly,
) -> Result<EqTensor> {
    let dlog = dennis_dlog(unit)?;
    let wedge = wedge_with_dlog(source, l, &dlog)?;
    project_pi(&wedge.pushforward(s)?)
}

pub fn correction_term(f: &LensMap, l: i64) -> Result<EqTensor> {
    let unit = f.torsion_unit()?;
    correction_from_unit(&f.source, f.s as i64, l, &unit.unit)
}

/// Both sides of the transformation formula in one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub l: u32,
    pub target_l: u32,
    /// `∨_{S¹}(π_* y_{sl})` on the target.
    pub lhs: EqTensor,
    /// `f_* ∨_{S¹}(π_* y_l)`.
    pub pushed: EqTensor,
    pub correction: EqTensor,
    /// `pushed + correction`.
    pub rhs: EqTensor,
    /// `lhs - rhs`.
    pub discrepancy: EqTensor,
    pub agrees: bool,
}

/// Compares the `α ⊗ β` parts; the `β ⊗ α` parts are their negatives on
/// both sides.
pub fn transform_check(f: &LensMap, l: i64) -> Result<TransformReport> {
    let l = f.source.component(l)?;
    let n = f.source.n();
    let target_l = (f.s as u64 * l as u64 % n as u64) as u32;
    let lhs = cobracket_pi_y(&f.target, target_l as i64, 0)?.left;
    let pushed = cobracket_pi_y(&f.source, l as i64, 0)?
        .left
        .pushforward(f.s as i64)?;
    let correction = correction_term(f, l as i64)?;
    let rhs = pushed.add(&correction)?;
    let discrepancy = lhs.sub(&rhs)?;
    Ok(TransformReport {
        l,
        target_l,
        agrees: discrepancy.is_zero(),
        lhs,
        pushed,
        correction,
        rhs,
        discrepancy,
    })
}
