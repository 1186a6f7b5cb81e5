//! Non-equivariant loop homology of `L(n;k)` in the degrees used by the
//! coproduct computations, and the coproduct of the classes `[ρ_{l,m}]`.
//!
//! `[ρ_{l,m}] ∈ H_3(L_l M)` is the pushforward of the fundamental class along
//! the family of loops winding `l` times in the first coordinate and
//! `kl + nm` times in the second. Its coproduct, projected to
//! `H_1(LM) ⊗ H_0(LM)`, is a [`BiForm`]:
//!
//! ```text
//! Σ_{a=1}^{l-1} t^a t2^{l-a} dt/t  +  r Σ_{a=1}^{kl+nm-1} t^{ra} t2^{r(kl+nm-a)} dt/t
//! ```
//!
//! with `r = k⁻¹ mod n`, exponents mod `n`, and every monomial with a zero
//! exponent in either slot dropped.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm, mod_inv, reduce_wide, residue};
use crate::cyclic_algebra::{check_multiplier, OneForm};
use crate::error::{Error, Result};
use crate::notation::{coeff_prefix, join_terms, sub, sup, Notation};

/// The lens space `L(n;k)`, with `k` stored as its residue in `[1, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensPair {
    n: u32,
    k: u32,
    r: u32,
}

impl LensPair {
    pub fn new(n: u32, k: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidOrder { n, min: 2 });
        }
        let kr = residue(k, n);
        let r = mod_inv(kr as i64, n as u64).ok_or(Error::InvalidLensSpace { n, k })? as u32;
        Ok(Self { n, k: kr, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `k⁻¹ mod n`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Validates a component index `l ∈ [1, n)`.
    pub fn component(&self, l: i64) -> Result<u32> {
        if l < 1 || l >= self.n as i64 {
            return Err(Error::InvalidComponent { l, n: self.n });
        }
        Ok(l as u32)
    }
}

impl fmt::Display for LensPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({};{})", self.n, self.k)
    }
}

/// The class `[ρ_{l,m}] ∈ H_3(L_l M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RhoClass {
    pub l: u32,
    pub m: i64,
}

impl RhoClass {
    pub fn new(l: u32, m: i64) -> Self {
        Self { l, m }
    }
}

/// An element of `H_1(LM) ⊗ H_0(LM)`: a sum of `c t^i t2^j dt/t` with
/// `i, j ∈ [1, n)`.
///
/// Coefficients live in `Z/modulus Z`; the modulus is `n` for coproduct
/// values and may be a divisor of `n` after an explicit reduction. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiForm {
    n: u32,
    modulus: u64,
    terms: BTreeMap<(u32, u32), u64>,
}

impl BiForm {
    pub fn zero(n: u32, modulus: u64) -> Self {
        assert!(modulus > 0, "bi-form coefficients need a positive modulus");
        Self {
            n,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    /// Sums `(i, j, c)` triples. Exponents wrap mod `n`; monomials with a
    /// zero exponent are discarded.
    pub fn from_terms(
        n: u32,
        modulus: u64,
        terms: impl IntoIterator<Item = (i64, i64, i64)>,
    ) -> Self {
        let mut out = Self::zero(n, modulus);
        for (i, j, c) in terms {
            out.add_term(residue(i, n), residue(j, n), c as i128);
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: i128) {
        if i == 0 || j == 0 {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert(0);
        let v = reduce_wide(*entry as i128 + c, self.modulus) as u64;
        if v == 0 {
            self.terms.remove(&(i, j));
        } else {
            *entry = v;
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero terms `((i, j), c)` in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.modulus != other.modulus {
            return Err(Error::DimensionMismatch {
                left_n: self.n,
                left_m: self.modulus,
                right_n: other.n,
                right_m: other.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c as i128);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, -(c as i128));
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.n, self.modulus);
        for ((i, j), v) in self.terms() {
            out.add_term(i, j, v as i128 * c as i128);
        }
        out
    }

    /// Exchanges the two exponent slots.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.n, self.modulus);
        for ((i, j), c) in self.terms() {
            out.add_term(j, i, c as i128);
        }
        out
    }

    pub fn reduce_modulus(&self, to: u64) -> Result<Self> {
        if to == 0 || !self.modulus.is_multiple_of(to) {
            return Err(Error::IncompatibleModulus {
                from: self.modulus,
                to,
            });
        }
        let mut out = Self::zero(self.n, to);
        for ((i, j), c) in self.terms() {
            out.add_term(i, j, c as i128);
        }
        Ok(out)
    }

    /// Pushforward along `t ↦ t^s, t2 ↦ t2^s`:
    /// `t^i t2^j dt/t ↦ s t^{si} t2^{sj} dt/t`.
    pub fn pushforward(&self, s: i64) -> Result<Self> {
        let s = check_multiplier(s, self.n)?;
        let mut out = Self::zero(self.n, self.modulus);
        for ((i, j), c) in self.terms() {
            out.add_term(
                residue(s * i as i64, self.n),
                residue(s * j as i64, self.n),
                c as i128 * s as i128,
            );
        }
        Ok(out)
    }

    pub fn render(&self, notation: Notation) -> String {
        let terms = self
            .terms()
            .map(|((i, j), c)| {
                let c = coeff_prefix(c);
                match notation {
                    Notation::Ascii => format!("{c}t^{i}t2^{j}"),
                    Notation::Unicode => {
                        format!("{c}t{}t{}{}", sup(i as u64), sub(2), sup(j as u64))
                    }
                }
            })
            .collect();
        join_terms(terms, " dt/t")
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

#[derive(Serialize, Deserialize)]
struct BiTerm {
    i: u32,
    j: u32,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct BiFormJson {
    n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    terms: Vec<BiTerm>,
}

impl Serialize for BiForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiFormJson {
            n: self.n,
            modulus: (self.modulus != self.n as u64).then_some(self.modulus),
            terms: self.terms().map(|((i, j), c)| BiTerm { i, j, c }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = BiFormJson::deserialize(d)?;
        let modulus = j.modulus.unwrap_or(j.n as u64);
        if j.n < 2 || modulus == 0 {
            return Err(D::Error::custom(
                "bi-form needs n >= 2 and a positive modulus",
            ));
        }
        let mut out = BiForm::zero(j.n, modulus);
        for t in j.terms {
            if t.i == 0 || t.j == 0 || t.i >= j.n || t.j >= j.n || t.c == 0 || t.c >= modulus {
                return Err(D::Error::custom(format!(
                    "term ({}, {}, {}) is not canonical for n={}",
                    t.i, t.j, t.c, j.n
                )));
            }
            out.add_term(t.i, t.j, t.c as i128);
        }
        Ok(out)
    }
}

/// Finite abelian group `Z^rank ⊕ Z/t_1 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSignature {
    pub rank: u32,
    pub torsion: Vec<u64>,
}

impl GroupSignature {
    pub fn free(rank: u32) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(rank: u32, torsion: Vec<u64>) -> Self {
        Self { rank, torsion }
    }
}

impl fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// `H_r(L_l M)` for `r ≤ 4` and every component `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub n: u32,
    /// `components[l][r]` is `H_r(L_l M)`.
    pub components: Vec<[GroupSignature; 5]>,
}

impl HomologyTable {
    pub fn of(space: &LensPair) -> Self {
        let n = space.n() as u64;
        let groups = || {
            [
                GroupSignature::free(1),
                GroupSignature::with_torsion(0, vec![n]),
                GroupSignature::free(1),
                GroupSignature::with_torsion(1, vec![n]),
                GroupSignature::free(1),
            ]
        };
        Self {
            n: space.n(),
            components: (0..space.n()).map(|_| groups()).collect(),
        }
    }

    pub fn group(&self, l: u32, degree: usize) -> &GroupSignature {
        &self.components[l as usize][degree]
    }
}

/// Number of `a ∈ [1, len)` with `a ≡ rho (mod n)`.
fn residue_count(len: i64, rho: i64, n: i64) -> i64 {
    let in_range = if rho < len {
        (len - 1 - rho) / n + 1
    } else {
        0
    };
    in_range - i64::from(rho == 0 && len > 0)
}

/// `pr_1 ∘ ∨ (j_*[ρ_{l,m}])`, coefficients mod `n`.
pub fn coproduct_rho(space: &LensPair, c: RhoClass) -> Result<BiForm> {
    let n = space.n() as i64;
    let l = space.component(c.l as i64)? as i64;
    if c.m < 0 {
        return Err(Error::NegativeWinding { l: c.l, m: c.m });
    }
    let (k, r) = (space.k() as i64, space.r() as i64);
    let len = k * l + n * c.m;
    let mut out = BiForm::zero(space.n(), n as u64);
    for a in 1..l {
        out.add_term(a as u32, (l - a) as u32, 1);
    }
    // Each term of the second sum depends only on a mod n.
    for rho in 0..n {
        let count = residue_count(len, rho, n);
        if count == 0 {
            continue;
        }
        let i = residue(r * rho, space.n());
        let j = residue(r * ((len - rho) % n), space.n());
        out.add_term(i, j, r as i128 * count as i128);
    }
    Ok(out)
}

/// Coproduct of the kernel generator: `[ρ_{l,1+n_l l}] - [ρ_{l,1+l}]`.
pub fn k_family_coproduct(space: &LensPair, l: i64, n_l: i64) -> Result<BiForm> {
    let l = space.component(l)?;
    let high = coproduct_rho(space, RhoClass::new(l, 1 + n_l * l as i64))?;
    let base = coproduct_rho(space, RhoClass::new(l, 1 + l as i64))?;
    high.sub(&base)
}

/// Default normalisation of the kernel generator in component `l`.
///
/// The coefficient of every projected term of [`k_family_coproduct`] is
/// `r (n_l - 1) l`. This picks the smallest `n_l ≥ 2` making that
/// coefficient `≡ 1` modulo each torsion order `gcd(p, n)` that `l` is
/// coprime to; when there is no such order it returns 2.
pub fn default_n_l(space: &LensPair, l: u32) -> i64 {
    let n = space.n() as u64;
    let modulus = (1..n)
        .filter(|&p| p != l as u64)
        .map(|p| gcd(p, n))
        .filter(|&g| g > 1 && gcd(g, l as u64) == 1)
        .fold(1, lcm);
    if modulus == 1 {
        return 2;
    }
    let rl = space.r() as i64 * l as i64;
    1 + mod_inv(rl, modulus).expect("r l is a unit modulo orders coprime to l") as i64
}

/// String product of `[ρ_{l,m}]` with a degree-one class: shifts the
/// component of every term by `l`.
pub fn product_rho_form(space: &LensPair, c: RhoClass, form: &OneForm) -> Result<OneForm> {
    let l = space.component(c.l as i64)? as i64;
    check_form(space, form)?;
    Ok(OneForm::from_terms(
        form.n(),
        form.modulus(),
        form.terms().map(|(q, v)| (q as i64 + l, v)),
    ))
}

fn check_form(space: &LensPair, form: &OneForm) -> Result<()> {
    let m = form.modulus();
    if form.n() != space.n() || m == 0 || !(space.n() as u64).is_multiple_of(m) {
        return Err(Error::DimensionMismatch {
            left_n: space.n(),
            left_m: space.n() as u64,
            right_n: form.n(),
            right_m: m,
        });
    }
    Ok(())
}

/// Rewrites a 1-form in the homogeneous basis: each `t^p dt` becomes
/// `t^p t2^{n-1-p} dt`, i.e. `t^a dt/t ↦ t^a t2^{-a} dt/t`.
pub fn homogenize(form: &OneForm) -> BiForm {
    BiForm::from_terms(
        form.n(),
        form.modulus(),
        form.terms().map(|(a, c)| (a as i64, -(a as i64), c)),
    )
}

/// `τ_*(π_* y_l) ∧ ω` for a logarithmic form `ω`: the homogenised form
/// multiplied by `(t^l - t2^l)`.
pub fn wedge_with_dlog(space: &LensPair, l: i64, form: &OneForm) -> Result<BiForm> {
    let l = space.component(l)? as i64;
    check_form(space, form)?;
    let terms = form.terms().flat_map(|(a, c)| {
        let a = a as i64;
        [(a + l, -a, c), (a, l - a, -c)]
    });
    Ok(BiForm::from_terms(form.n(), form.modulus(), terms))
}
