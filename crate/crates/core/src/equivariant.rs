//! Equivariant projection, transfer, the string cobracket on the two
//! generator families of `H_2^{S¹}(LM, M)`, and nonzero-component counts.
//!
//! `H_0^{S¹}(L_q M) ≅ Z` is generated by `β_q`, and `H_1^{S¹}(L_p M)` is the
//! cokernel of multiplication by `p` on `Z/n`, i.e. `Z/gcd(p, n)`, generated
//! by `α_p`. The projection `π_*` sends `c t^p t2^q dt/t` to
//! `(c mod gcd(p, n)) α_p ⊗ β_q` and kills every `p` coprime to `n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm, reduce_wide, residue};
use crate::cyclic_algebra::{check_multiplier, OneForm};
use crate::error::{Error, Result};
use crate::loop_homology::{
    coproduct_rho, default_n_l, k_family_coproduct, BiForm, LensPair, RhoClass,
};
use crate::notation::{coeff_prefix, join_terms, sub, Notation};

/// Order of `α_p`, the generator of `H_1^{S¹}(L_p M)`.
pub fn alpha_order(p: u32, n: u32) -> u64 {
    gcd(p as u64, n as u64)
}

/// Least common multiple of all nontrivial `gcd(p, n)`; the coefficient
/// ring that suffices for anything projected by `π_*`. It is 1 when `n` is
/// prime.
pub fn working_modulus(n: u32) -> u64 {
    (1..n)
        .map(|p| alpha_order(p, n))
        .filter(|&g| g > 1)
        .fold(1, lcm)
}

/// Sparse map from generator keys to residues modulo a per-key order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Sparse<K: Ord> {
    terms: BTreeMap<K, u64>,
}

impl<K: Ord + Copy> Sparse<K> {
    fn add(&mut self, key: K, c: i128, order: u64) {
        if order <= 1 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        let v = reduce_wide(*entry as i128 + c, order) as u64;
        if v == 0 {
            self.terms.remove(&key);
        } else {
            *entry = v;
        }
    }
}

/// `Σ c_{pq} α_p ⊗ β_q` with `c_{pq} ∈ Z/gcd(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EqTensor {
    n: u32,
    inner: Sparse<(u32, u32)>,
}

impl EqTensor {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            inner: Sparse::default(),
        }
    }

    /// Sums `(p, q, c)` triples, indices mod `n`. Terms whose group vanishes
    /// (`gcd(p, n) = 1`) and terms with a zero index are dropped.
    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        let mut out = Self::zero(n);
        for (p, q, c) in terms {
            out.add_term(residue(p, n), residue(q, n), c as i128);
        }
        out
    }

    fn add_term(&mut self, p: u32, q: u32, c: i128) {
        if p == 0 || q == 0 {
            return;
        }
        self.inner.add((p, q), c, alpha_order(p, self.n));
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.inner.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> u64 {
        self.inner.terms.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero terms `((p, q), c)` in ascending `(p, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.inner.terms.iter().map(|(&k, &v)| (k, v))
    }

    fn combine(&self, other: &Self, sign: i128) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left_n: self.n,
                left_m: 0,
                right_n: other.n,
                right_m: 0,
            });
        }
        let mut out = self.clone();
        for ((p, q), c) in other.terms() {
            out.add_term(p, q, sign * c as i128);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.n);
        for ((p, q), v) in self.terms() {
            out.add_term(p, q, v as i128 * c as i128);
        }
        out
    }

    /// Pushforward along the component multiplier `s`:
    /// `α_p ⊗ β_q ↦ s α_{sp} ⊗ β_{sq}`.
    pub fn pushforward(&self, s: i64) -> Result<Self> {
        let s = check_multiplier(s, self.n)?;
        let mut out = Self::zero(self.n);
        for ((p, q), c) in self.terms() {
            out.add_term(
                residue(s * p as i64, self.n),
                residue(s * q as i64, self.n),
                c as i128 * s as i128,
            );
        }
        Ok(out)
    }

    pub fn render(&self, notation: Notation) -> String {
        join_terms(
            self.terms()
                .map(|((p, q), c)| {
                    format!(
                        "{}{}",
                        coeff_prefix(c),
                        tensor(alpha(p, notation), beta(q, notation), notation)
                    )
                })
                .collect(),
            "",
        )
    }
}

fn alpha(p: u32, notation: Notation) -> String {
    match notation {
        Notation::Ascii => format!("a{p}"),
        Notation::Unicode => format!("α{}", sub(p as u64)),
    }
}

fn beta(q: u32, notation: Notation) -> String {
    match notation {
        Notation::Ascii => format!("b{q}"),
        Notation::Unicode => format!("β{}", sub(q as u64)),
    }
}

fn tensor(a: String, b: String, notation: Notation) -> String {
    match notation {
        Notation::Ascii => format!("{a}*{b}"),
        Notation::Unicode => format!("{a}⊗{b}"),
    }
}

impl fmt::Display for EqTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

#[derive(Serialize, Deserialize)]
struct EqTerm {
    p: u32,
    q: u32,
    c: u64,
    #[serde(rename = "mod")]
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct EqTensorJson {
    n: u32,
    terms: Vec<EqTerm>,
}

impl Serialize for EqTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EqTensorJson {
            n: self.n,
            terms: self
                .terms()
                .map(|((p, q), c)| EqTerm {
                    p,
                    q,
                    c,
                    modulus: alpha_order(p, self.n),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EqTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = EqTensorJson::deserialize(d)?;
        if j.n < 2 {
            return Err(D::Error::custom("n must be at least 2"));
        }
        let mut out = EqTensor::zero(j.n);
        for t in j.terms {
            let order = alpha_order(t.p, j.n);
            let valid = (1..j.n).contains(&t.p)
                && (1..j.n).contains(&t.q)
                && order > 1
                && t.modulus == order
                && (1..order).contains(&t.c);
            if !valid {
                return Err(D::Error::custom(format!(
                    "term a{}*b{} (c={}, mod={}) is not canonical for n={}",
                    t.p, t.q, t.c, t.modulus, j.n
                )));
            }
            out.add_term(t.p, t.q, t.c as i128);
        }
        Ok(out)
    }
}

/// An antisymmetrised cobracket value `Σ c α_p⊗β_q + Σ c' β_q⊗α_p`.
///
/// `swapped` stores the `β ⊗ α` part under the key `(p, q)` of its `α_p`
/// and `β_q` factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EqTensorPair {
    pub left: EqTensor,
    pub swapped: EqTensor,
}

impl EqTensorPair {
    /// `x - τ(x)` where `τ` exchanges the tensor factors.
    pub fn antisymmetrize(left: EqTensor) -> Self {
        let swapped = left.scale(-1);
        Self { left, swapped }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.swapped.is_zero()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.swapped == self.left.scale(-1)
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut terms: Vec<String> = self
            .left
            .terms()
            .map(|((p, q), c)| {
                format!(
                    "{}{}",
                    coeff_prefix(c),
                    tensor(alpha(p, notation), beta(q, notation), notation)
                )
            })
            .collect();
        terms.extend(self.swapped.terms().map(|((p, q), c)| {
            format!(
                "{}{}",
                coeff_prefix(c),
                tensor(beta(q, notation), alpha(p, notation), notation)
            )
        }));
        join_terms(terms, "")
    }
}

impl fmt::Display for EqTensorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// `Σ c_p α_p` with `c_p ∈ Z/gcd(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaVector {
    n: u32,
    inner: Sparse<u32>,
}

impl AlphaVector {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            inner: Sparse::default(),
        }
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = Self::zero(n);
        for (p, c) in terms {
            let p = residue(p, n);
            if p != 0 {
                out.inner.add(p, c as i128, alpha_order(p, n));
            }
        }
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.inner.terms.is_empty()
    }

    pub fn coeff(&self, p: u32) -> u64 {
        self.inner.terms.get(&p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.inner.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn render(&self, notation: Notation) -> String {
        join_terms(
            self.terms()
                .map(|(p, c)| format!("{}{}", coeff_prefix(c), alpha(p, notation)))
                .collect(),
            "",
        )
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// `Σ c α_p ⊗ α_{p'}` with `c ∈ Z/gcd(gcd(p, n), gcd(p', n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaTensor {
    n: u32,
    inner: Sparse<(u32, u32)>,
}

impl AlphaTensor {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            inner: Sparse::default(),
        }
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        let mut out = Self::zero(n);
        for (p, p2, c) in terms {
            out.add_term(residue(p, n), residue(p2, n), c as i128);
        }
        out
    }

    fn order(&self, p: u32, p2: u32) -> u64 {
        gcd(alpha_order(p, self.n), alpha_order(p2, self.n))
    }

    fn add_term(&mut self, p: u32, p2: u32, c: i128) {
        if p == 0 || p2 == 0 {
            return;
        }
        let order = self.order(p, p2);
        self.inner.add((p, p2), c, order);
    }

    /// `a ⊗ b`.
    pub fn outer(a: &AlphaVector, b: &AlphaVector) -> Self {
        let mut out = Self::zero(a.n);
        for (p, c) in a.terms() {
            for (p2, c2) in b.terms() {
                out.add_term(p, p2, c as i128 * c2 as i128);
            }
        }
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.inner.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, p2: u32) -> u64 {
        self.inner.terms.get(&(p, p2)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.inner.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, p2), c) in other.terms() {
            out.add_term(p, p2, c as i128);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.n);
        for ((p, p2), v) in self.terms() {
            out.add_term(p, p2, v as i128 * c as i128);
        }
        out
    }

    pub fn render(&self, notation: Notation) -> String {
        join_terms(
            self.terms()
                .map(|((p, p2), c)| {
                    format!(
                        "{}{}",
                        coeff_prefix(c),
                        tensor(alpha(p, notation), alpha(p2, notation), notation)
                    )
                })
                .collect(),
            "",
        )
    }
}

impl fmt::Display for AlphaTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

#[derive(Serialize, Deserialize)]
struct AlphaTerm {
    p1: u32,
    p2: u32,
    c: u64,
    #[serde(rename = "mod")]
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct AlphaTensorJson {
    n: u32,
    terms: Vec<AlphaTerm>,
}

impl Serialize for AlphaTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlphaTensorJson {
            n: self.n,
            terms: self
                .terms()
                .map(|((p1, p2), c)| AlphaTerm {
                    p1,
                    p2,
                    c,
                    modulus: self.order(p1, p2),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlphaTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = AlphaTensorJson::deserialize(d)?;
        let mut out = AlphaTensor::zero(j.n);
        for t in j.terms {
            let in_range = (1..j.n).contains(&t.p1) && (1..j.n).contains(&t.p2);
            if !in_range || t.modulus != out.order(t.p1, t.p2) || !(1..t.modulus).contains(&t.c) {
                return Err(D::Error::custom(format!(
                    "term a{}*a{} (c={}, mod={}) is not canonical for n={}",
                    t.p1, t.p2, t.c, t.modulus, j.n
                )));
            }
            out.add_term(t.p1, t.p2, t.c as i128);
        }
        Ok(out)
    }
}

fn projection_order(p: u32, n: u32, modulus: u64) -> Result<u64> {
    let g = alpha_order(p, n);
    if g > 1 && !modulus.is_multiple_of(g) {
        return Err(Error::IncompatibleModulus {
            from: modulus,
            to: g,
        });
    }
    Ok(g)
}

/// `π_* ⊗ π_*` on `H_1(LM) ⊗ H_0(LM)`.
///
/// Fails only when a surviving term's torsion order does not divide the
/// coefficient modulus of `b`.
pub fn project_pi(b: &BiForm) -> Result<EqTensor> {
    let mut out = EqTensor::zero(b.n());
    for ((p, q), c) in b.terms() {
        projection_order(p, b.n(), b.modulus())?;
        out.add_term(p, q, c as i128);
    }
    Ok(out)
}

/// `π_*` on `H_1(LM)`: `t^a dt/t ↦ α_a`.
pub fn project_pi_oneform(form: &OneForm) -> Result<AlphaVector> {
    let n = form.n();
    let mut out = AlphaVector::zero(n);
    for (p, c) in form.terms() {
        if p == 0 {
            continue;
        }
        let g = projection_order(p, n, form.modulus())?;
        out.inner.add(p, c as i128, g);
    }
    Ok(out)
}

/// `τ_* β_q = q t^q dt/t`, the rotation class of the point class.
pub fn transfer_beta(q: u32, n: u32) -> OneForm {
    OneForm::monomial(n, n as u64, q as i64, q as i64)
}

/// `τ_* α_p = 0`: a torsion class cannot map nontrivially into the free
/// group `H_2(L_p M) ≅ Z`.
pub fn transfer_alpha(_p: u32, n: u32) -> OneForm {
    OneForm::zero(n, n as u64)
}

/// Cobracket of `π_* y_l`, taking `τ_* π_* y_l = [ρ_{l,m}]`.
pub fn cobracket_pi_y(space: &LensPair, l: i64, m: i64) -> Result<EqTensorPair> {
    let l = space.component(l)?;
    let left = project_pi(&coproduct_rho(space, RhoClass::new(l, m))?)?;
    Ok(EqTensorPair::antisymmetrize(left))
}

/// Cobracket of the kernel generator `y_l'` with an explicit `n_l`.
pub fn cobracket_k_family_with(space: &LensPair, l: i64, n_l: i64) -> Result<EqTensorPair> {
    let left = project_pi(&k_family_coproduct(space, l, n_l)?)?;
    Ok(EqTensorPair::antisymmetrize(left))
}

/// Cobracket of the kernel generator `y_l'` with the default `n_l`
/// ([`default_n_l`]).
pub fn cobracket_k_family(space: &LensPair, l: i64) -> Result<EqTensorPair> {
    let c = space.component(l)?;
    cobracket_k_family_with(space, l, default_n_l(space, c))
}

/// The tabulated closed form for `n = 9`:
/// `r (n_l - 1) l (α_3 ⊗ β_{6-kl} + α_6 ⊗ β_{9-kl})`, zero for `l ∈ {3, 6}`.
///
/// Its coefficients agree with [`cobracket_k_family_with`]; its `β` indices
/// do not satisfy `p + q ≡ l`, so the two differ as tensors.
pub fn k_family_closed_form(space: &LensPair, l: i64, n_l: i64) -> Result<EqTensor> {
    if space.n() != 9 {
        return Err(Error::NotImplemented(format!(
            "closed-form kernel cobracket is only tabulated for n = 9, got {}",
            space.n()
        )));
    }
    let l = space.component(l)? as i64;
    if l % 3 == 0 {
        return Ok(EqTensor::zero(9));
    }
    let (k, r) = (space.k() as i64, space.r() as i64);
    let c = r * (n_l - 1) * l;
    Ok(EqTensor::from_terms(
        9,
        [(3, 6 - k * l, c), (6, 9 - k * l, c)],
    ))
}

/// How nonzero generator values are turned into a single count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Nonzero `π_* y_l` values plus nonzero `y_l'` values.
    GeneratorSum,
    /// Components `l` where either family is nonzero.
    ComponentUnion,
    /// Nonzero `π_* y_l` values only.
    PiFamily,
}

impl Convention {
    pub const ALL: [Convention; 3] = [
        Convention::GeneratorSum,
        Convention::ComponentUnion,
        Convention::PiFamily,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::GeneratorSum => "generator-sum",
            Convention::ComponentUnion => "component-union",
            Convention::PiFamily => "pi-family",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Convention::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown counting convention `{s}`")))
    }
}

/// Which components carry a nonzero value, for one lens space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: u32,
    pub k: u32,
    pub pi_family_nonzero: BTreeSet<u32>,
    pub k_family_nonzero: BTreeSet<u32>,
    pub generator_count: usize,
    pub component_union_count: usize,
    pub pi_family_count: usize,
    pub convention: Convention,
    /// Components where some `m ∈ [0, n)` flips whether the `π_* y_l` value
    /// is zero, so the count depends on the `m = 0` representative.
    pub m_sensitive: BTreeSet<u32>,
}

impl CountReport {
    fn new(
        space: &LensPair,
        pi: BTreeSet<u32>,
        kf: BTreeSet<u32>,
        m_sensitive: BTreeSet<u32>,
        convention: Convention,
    ) -> Self {
        Self {
            n: space.n(),
            k: space.k(),
            generator_count: pi.len() + kf.len(),
            component_union_count: pi.union(&kf).count(),
            pi_family_count: pi.len(),
            pi_family_nonzero: pi,
            k_family_nonzero: kf,
            convention,
            m_sensitive,
        }
    }

    /// The count under the report's own convention.
    pub fn count(&self) -> usize {
        self.count_under(self.convention)
    }

    pub fn count_under(&self, convention: Convention) -> usize {
        match convention {
            Convention::GeneratorSum => self.generator_count,
            Convention::ComponentUnion => self.component_union_count,
            Convention::PiFamily => self.pi_family_count,
        }
    }
}

fn m_sensitive<F>(space: &LensPair, is_nonzero: F) -> Result<BTreeSet<u32>>
where
    F: Fn(u32, i64) -> Result<bool>,
{
    let mut out = BTreeSet::new();
    for l in 1..space.n() {
        let base = is_nonzero(l, 0)?;
        for m in 1..space.n() as i64 {
            if is_nonzero(l, m)? != base {
                out.insert(l);
                break;
            }
        }
    }
    Ok(out)
}

/// Nonzero-component count for the string cobracket.
pub fn count_nonzero(space: &LensPair, convention: Convention) -> CountReport {
    let run = || -> Result<CountReport> {
        let mut pi = BTreeSet::new();
        let mut kf = BTreeSet::new();
        for l in 1..space.n() {
            if !cobracket_pi_y(space, l as i64, 0)?.is_zero() {
                pi.insert(l);
            }
            if !cobracket_k_family(space, l as i64)?.is_zero() {
                kf.insert(l);
            }
        }
        let sensitive = m_sensitive(space, |l, m| {
            Ok(!cobracket_pi_y(space, l as i64, m)?.is_zero())
        })?;
        Ok(CountReport::new(space, pi, kf, sensitive, convention))
    };
    run().expect("every component of a valid lens space is in range")
}

/// Nonzero-component count for the string coproduct, before projection.
pub fn count_nonzero_coproduct(space: &LensPair, convention: Convention) -> CountReport {
    let run = || -> Result<CountReport> {
        let mut pi = BTreeSet::new();
        let mut kf = BTreeSet::new();
        for l in 1..space.n() {
            if !coproduct_rho(space, RhoClass::new(l, 0))?.is_zero() {
                pi.insert(l);
            }
            if !k_family_coproduct(space, l as i64, default_n_l(space, l))?.is_zero() {
                kf.insert(l);
            }
        }
        let sensitive = m_sensitive(space, |l, m| {
            Ok(!coproduct_rho(space, RhoClass::new(l, m))?.is_zero())
        })?;
        Ok(CountReport::new(space, pi, kf, sensitive, convention))
    };
    run().expect("every component of a valid lens space is in range")
}
