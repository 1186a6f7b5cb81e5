//! Arithmetic in `(Z/mZ)[t]/(t^n - 1)` and its module of formal 1-forms.
//!
//! Elements of the group ring are stored densely, one coefficient per
//! exponent in `[0, n)`. A modulus of `0` means integer coefficients. Every
//! reduction between coefficient rings is an explicit call to
//! [`CyclicPoly::reduce_modulus`]; binary operations refuse mixed moduli.
//!
//! 1-forms live in the `dt/t` basis: [`OneForm`] holds the coefficient of
//! `t^a dt/t` at index `a`. [`OneForm::render_dt`] rewrites a form in the
//! `dt` basis using `t^a dt/t = t^{a-1} dt`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, mod_inv, reduce, reduce_wide, residue};
use crate::error::{Error, Result, SingularSystem};
use crate::notation::{join_terms, sup, Notation};

/// An element of `(Z/mZ)[Z/nZ]`, written as a polynomial in `t` modulo `t^n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct CyclicPoly {
    n: u32,
    m: u64,
    coeffs: Vec<i64>,
}

impl CyclicPoly {
    /// Builds a polynomial from a dense coefficient vector of length `n`.
    pub fn new(n: u32, m: u64, coeffs: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder { n, min: 1 });
        }
        if coeffs.len() != n as usize {
            return Err(Error::Malformed(format!(
                "expected {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| reduce(c, m)).collect();
        Ok(Self { n, m, coeffs })
    }

    pub fn zero(n: u32, m: u64) -> Self {
        assert!(n > 0, "group order must be positive");
        Self {
            n,
            m,
            coeffs: vec![0; n as usize],
        }
    }

    pub fn one(n: u32, m: u64) -> Self {
        Self::monomial(n, m, 0, 1)
    }

    /// `c * t^exp`, with `exp` taken mod `n`.
    pub fn monomial(n: u32, m: u64, exp: i64, c: i64) -> Self {
        let mut p = Self::zero(n, m);
        p.coeffs[residue(exp, n) as usize] = reduce(c, m);
        p
    }

    /// Sums `(exponent, coefficient)` pairs; exponents wrap mod `n`.
    pub fn from_terms(n: u32, m: u64, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero(n, m);
        for (e, c) in terms {
            let slot = &mut p.coeffs[residue(e, n) as usize];
            *slot = reduce_wide(*slot as i128 + c as i128, m);
        }
        p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Coefficient modulus; `0` for integer coefficients.
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs[residue(exp, self.n) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e as u32, c))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::DimensionMismatch {
                left_n: self.n,
                left_m: self.m,
                right_n: other.n,
                right_m: other.m,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i128, i128) -> i128) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| reduce_wide(f(a as i128, b as i128), self.m))
            .collect();
        Ok(Self {
            n: self.n,
            m: self.m,
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            n: self.n,
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| reduce_wide(a as i128 * c as i128, self.m))
                .collect(),
        }
    }

    /// Coerces coefficients into `Z/toZ`. Allowed when `to` divides the
    /// current modulus, or when the current coefficients are integers.
    pub fn reduce_modulus(&self, to: u64) -> Result<Self> {
        let allowed = to > 0 && (self.m == 0 || self.m.is_multiple_of(to));
        if !allowed {
            return Err(Error::IncompatibleModulus { from: self.m, to });
        }
        Self::new(self.n, to, self.coeffs.clone())
    }

    /// The ring endomorphism `t ↦ t^s`.
    pub fn substitute(&self, s: i64) -> Self {
        Self::from_terms(self.n, self.m, self.terms().map(|(e, c)| (e as i64 * s, c)))
    }

    /// The n×n circulant matrix of multiplication by `self`.
    fn circulant(&self, m: u64) -> Vec<Vec<u64>> {
        let n = self.n as usize;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| reduce(self.coeffs[(i + n - j) % n], m) as u64)
                    .collect()
            })
            .collect()
    }

    pub fn render(&self, notation: Notation) -> String {
        let terms = self
            .terms()
            .map(|(e, c)| poly_monomial(e, c, notation))
            .collect();
        join_terms(terms, "")
    }
}

fn poly_monomial(e: u32, c: i64, notation: Notation) -> String {
    let var = match (e, notation) {
        (0, _) => return c.to_string(),
        (1, _) => "t".to_string(),
        (_, Notation::Ascii) => format!("t^{e}"),
        (_, Notation::Unicode) => format!("t{}", sup(e as u64)),
    };
    match c {
        1 => var,
        -1 => format!("-{var}"),
        _ => format!("{c}{var}"),
    }
}

impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// Cyclic convolution of `a` and `b`.
pub fn poly_mul(a: &CyclicPoly, b: &CyclicPoly) -> Result<CyclicPoly> {
    a.check_same(b)?;
    let n = a.n as usize;
    let mut acc = vec![0i128; n];
    for (i, &x) in a.coeffs.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (j, &y) in b.coeffs.iter().enumerate() {
            acc[(i + j) % n] += x as i128 * y as i128;
        }
    }
    Ok(CyclicPoly {
        n: a.n,
        m: a.m,
        coeffs: acc.into_iter().map(|c| reduce_wide(c, a.m)).collect(),
    })
}

/// Inverse of a unit of `(Z/mZ)[t]/(t^n - 1)`.
///
/// Solves the circulant system `C(u) v = e_0` separately over each
/// prime-power factor of `m`, using elimination with unit pivots, and glues
/// the solutions together with the Chinese remainder theorem.
pub fn invert_unit(u: &CyclicPoly) -> Result<CyclicPoly> {
    if u.m == 0 {
        return Err(Error::ModulusRequired);
    }
    let n = u.n as usize;
    let mut solution = vec![0i128; n];
    let mut solved_mod: i128 = 1;
    for (p, e) in factorize(u.m) {
        let q = p.pow(e);
        let local = solve_circulant(u, p, q).map_err(|column| {
            Error::NotInvertible(Box::new(SingularSystem {
                modulus: u.m,
                prime: p,
                column,
                matrix: u.circulant(u.m),
            }))
        })?;
        // x ≡ solution (mod solved_mod), x ≡ local (mod q)
        let inv = mod_inv((solved_mod % q as i128) as i64, q).expect("coprime factors") as i128;
        for (x, &y) in solution.iter_mut().zip(&local) {
            let t = ((y as i128 - *x) * inv).rem_euclid(q as i128);
            *x += solved_mod * t;
        }
        solved_mod *= q as i128;
    }
    Ok(CyclicPoly {
        n: u.n,
        m: u.m,
        coeffs: solution.into_iter().map(|c| reduce_wide(c, u.m)).collect(),
    })
}

/// Gauss-Jordan elimination over `Z/qZ` with `q = p^e`. Returns the failing
/// column when no unit pivot exists.
fn solve_circulant(u: &CyclicPoly, p: u64, q: u64) -> std::result::Result<Vec<i64>, usize> {
    let n = u.n as usize;
    let qi = q as i128;
    let mut rows: Vec<Vec<i128>> = u
        .circulant(q)
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<i128> = row.into_iter().map(i128::from).collect();
            r.push(i128::from(i == 0));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| rows[r][col] % p as i128 != 0)
            .ok_or(col)?;
        rows.swap(col, pivot);
        let inv = mod_inv(rows[col][col] as i64, q).expect("unit pivot") as i128;
        for x in rows[col].iter_mut() {
            *x = (*x * inv).rem_euclid(qi);
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x - factor * y).rem_euclid(qi);
            }
        }
    }
    Ok(rows.into_iter().map(|r| r[n] as i64).collect())
}

/// An element of `Ω¹ = (Z/mZ)[t]/(t^n - 1) dt/t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneForm(CyclicPoly);

impl OneForm {
    /// The form `Σ coeffs[a] t^a dt/t`.
    pub fn new(n: u32, m: u64, coeffs: Vec<i64>) -> Result<Self> {
        CyclicPoly::new(n, m, coeffs).map(Self)
    }

    pub fn zero(n: u32, m: u64) -> Self {
        Self(CyclicPoly::zero(n, m))
    }

    /// `c * t^exp dt/t`.
    pub fn monomial(n: u32, m: u64, exp: i64, c: i64) -> Self {
        Self(CyclicPoly::monomial(n, m, exp, c))
    }

    pub fn from_terms(n: u32, m: u64, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Self(CyclicPoly::from_terms(n, m, terms))
    }

    /// Builds a form from coefficients in the `dt` basis: `dt_coeffs[p]` is
    /// the coefficient of `t^p dt`.
    pub fn from_dt_basis(n: u32, m: u64, dt_coeffs: Vec<i64>) -> Result<Self> {
        let p = CyclicPoly::new(n, m, dt_coeffs)?;
        Ok(Self(p.terms().fold(
            CyclicPoly::zero(n, m),
            |mut acc, (e, c)| {
                acc.coeffs[residue(e as i64 + 1, n) as usize] = c;
                acc
            },
        )))
    }

    /// Coefficients of `t^a dt/t`.
    pub fn as_poly(&self) -> &CyclicPoly {
        &self.0
    }

    /// Coefficient of `t^p dt` at index `p`.
    pub fn dt_coeffs(&self) -> Vec<i64> {
        let n = self.n() as usize;
        (0..n).map(|p| self.0.coeffs[(p + 1) % n]).collect()
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn modulus(&self) -> u64 {
        self.0.m
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.coeff(exp)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.terms()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.0.add(&other.0).map(Self)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.0.sub(&other.0).map(Self)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self(self.0.scale(c))
    }

    /// The module action of the group ring.
    pub fn mul_poly(&self, p: &CyclicPoly) -> Result<Self> {
        poly_mul(p, &self.0).map(Self)
    }

    pub fn reduce_modulus(&self, to: u64) -> Result<Self> {
        self.0.reduce_modulus(to).map(Self)
    }

    /// Renders in the `dt/t` basis, e.g. `2t^3+t^5 dt/t`.
    pub fn render(&self, notation: Notation) -> String {
        let terms = self
            .terms()
            .map(|(e, c)| poly_monomial(e, c, notation))
            .collect();
        join_terms(terms, " dt/t")
    }

    /// Renders in the `dt` basis, e.g. `2t^2+2t^3+t^4+t^5 dt`.
    pub fn render_dt(&self, notation: Notation) -> String {
        let terms = self
            .dt_coeffs()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| poly_monomial(e as u32, c, notation))
            .collect();
        join_terms(terms, " dt")
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// Formal de Rham differential `Σ c_a t^a ↦ Σ a c_a t^a dt/t`, with `a` the
/// canonical exponent in `[0, n)`.
pub fn de_rham(p: &CyclicPoly) -> OneForm {
    OneForm(CyclicPoly {
        n: p.n,
        m: p.m,
        coeffs: p
            .coeffs
            .iter()
            .enumerate()
            .map(|(a, &c)| reduce_wide(a as i128 * c as i128, p.m))
            .collect(),
    })
}

/// `u⁻¹ du`, the logarithmic derivative of a unit.
pub fn dennis_dlog(u: &CyclicPoly) -> Result<OneForm> {
    let inv = invert_unit(u)?;
    de_rham(u).mul_poly(&inv)
}

/// Pushforward of a 1-form along `t ↦ t^s`:
/// `t^a dt/t ↦ s t^{sa} dt/t`, with `s` taken as its residue in `[1, n)`.
pub fn substitute_pushforward(form: &OneForm, s: i64) -> Result<OneForm> {
    let n = form.n();
    let s = check_multiplier(s, n)?;
    Ok(OneForm::from_terms(
        n,
        form.modulus(),
        form.terms().map(|(a, c)| (a as i64 * s, c * s)),
    ))
}

/// Validates a multiplier coprime to `n` and returns its residue.
pub(crate) fn check_multiplier(s: i64, n: u32) -> Result<i64> {
    let r = residue(s, n) as u64;
    if gcd(r, n as u64) != 1 {
        return Err(Error::InvalidMultiplier { s, n });
    }
    Ok(r as i64)
}

#[derive(Serialize, Deserialize)]
struct Term {
    exp: u32,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: u32,
    m: u64,
    terms: Vec<Term>,
}

impl From<CyclicPoly> for PolyJson {
    fn from(p: CyclicPoly) -> Self {
        PolyJson {
            n: p.n,
            m: p.m,
            terms: p.terms().map(|(exp, coeff)| Term { exp, coeff }).collect(),
        }
    }
}

impl TryFrom<PolyJson> for CyclicPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::InvalidOrder { n: 0, min: 1 });
        }
        if let Some(t) = j.terms.iter().find(|t| t.exp >= j.n) {
            return Err(Error::Malformed(format!(
                "exponent {} out of range for n={}",
                t.exp, j.n
            )));
        }
        Ok(CyclicPoly::from_terms(
            j.n,
            j.m,
            j.terms.into_iter().map(|t| (t.exp as i64, t.coeff)),
        ))
    }
}
