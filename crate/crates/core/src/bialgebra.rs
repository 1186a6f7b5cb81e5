//! Drinfeld compatibility between the string bracket and the string
//! cobracket, in the bidegree where both sides are computable:
//!
//! `∨_{S¹}(∧_{S¹}(X, Y)) = (ad_X ⊗ 1 + 1 ⊗ ad_X) ∨_{S¹}(Y)
//!                        - (ad_Y ⊗ 1 + 1 ⊗ ad_Y) ∨_{S¹}(X)`
//!
//! for `X`, `Y` of degree one. The sign of the second term is fixed at `-`.
//! Both sides land in `α ⊗ α`, since `ad_X` kills `α_p` and sends `β_q` to
//! an `α` class.

use serde::{Deserialize, Serialize};

use crate::equivariant::{
    alpha_order, cobracket_pi_y, project_pi_oneform, transfer_beta, AlphaTensor, AlphaVector,
    EqTensorPair,
};
use crate::error::{Error, Result};
use crate::loop_homology::{product_rho_form, LensPair, RhoClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqClassKind {
    /// `π_* y_l`, with `τ_* π_* y_l = [ρ_{l,m}]`.
    PiY {
        l: u32,
        m: i64,
    },
    Beta {
        q: u32,
    },
    Alpha {
        p: u32,
    },
}

/// A class of `H_*^{S¹}(LM)` for `M = L(n;k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EqClass {
    pub kind: EqClassKind,
    pub n: u32,
}

impl EqClass {
    pub fn pi_y(space: &LensPair, l: i64, m: i64) -> Result<Self> {
        let l = space.component(l)?;
        if m < 0 {
            return Err(Error::NegativeWinding { l, m });
        }
        Ok(Self {
            kind: EqClassKind::PiY { l, m },
            n: space.n(),
        })
    }

    pub fn beta(space: &LensPair, q: i64) -> Result<Self> {
        let q = space.component(q)?;
        Ok(Self {
            kind: EqClassKind::Beta { q },
            n: space.n(),
        })
    }

    pub fn alpha(space: &LensPair, p: i64) -> Result<Self> {
        let p = space.component(p)?;
        if alpha_order(p, space.n()) == 1 {
            return Err(Error::InvalidIndex {
                index: p as i64,
                n: space.n(),
            });
        }
        Ok(Self {
            kind: EqClassKind::Alpha { p },
            n: space.n(),
        })
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            EqClassKind::PiY { .. } | EqClassKind::Alpha { .. } => 1,
            EqClassKind::Beta { .. } => 0,
        }
    }
}

fn check_space(space: &LensPair, c: &EqClass) -> Result<()> {
    if c.n != space.n() {
        return Err(Error::MismatchedSpaces {
            source_n: c.n,
            target_n: space.n(),
        });
    }
    Ok(())
}

fn pi_y_parts(space: &LensPair, c: &EqClass) -> Result<(u32, i64)> {
    check_space(space, c)?;
    match c.kind {
        EqClassKind::PiY { l, m } => Ok((l, m)),
        other => Err(Error::NotImplemented(format!(
            "compatibility is only computed for π_* y_l inputs, got {other:?}"
        ))),
    }
}

/// `∨_{S¹} ∧_{S¹}(X, Y) = π_* ∨ τ_* ∧_{S¹}(X, Y)`, which vanishes because
/// `τ_*` maps the torsion group `H_3^{S¹}` into the free group `H_4`.
pub fn bialgebra_lhs(space: &LensPair, x: &EqClass, y: &EqClass) -> Result<AlphaTensor> {
    pi_y_parts(space, x)?;
    pi_y_parts(space, y)?;
    Ok(AlphaTensor::zero(space.n()))
}

/// `ad_X Z = ∧_{S¹}(X, Z)` for `Z` of degree zero or a torsion class.
pub fn ad_apply(space: &LensPair, x: &EqClass, z: &EqClass) -> Result<AlphaVector> {
    let (l, m) = pi_y_parts(space, x)?;
    check_space(space, z)?;
    match z.kind {
        EqClassKind::Beta { q } => {
            let form = product_rho_form(space, RhoClass::new(l, m), &transfer_beta(q, space.n()))?;
            project_pi_oneform(&form)
        }
        EqClassKind::Alpha { .. } => Ok(AlphaVector::zero(space.n())),
        EqClassKind::PiY { .. } => Err(Error::NotImplemented(
            "ad_X of a degree-two class lands outside the computed bidegree".into(),
        )),
    }
}

/// `(ad_X ⊗ 1 + 1 ⊗ ad_X)` on a cobracket value; only the `β` factors
/// contribute.
fn ad_both(space: &LensPair, x: &EqClass, value: &EqTensorPair) -> Result<AlphaTensor> {
    let n = space.n();
    let mut out = AlphaTensor::zero(n);
    for ((p, q), c) in value.left.terms() {
        let image = ad_apply(space, x, &EqClass::beta(space, q as i64)?)?;
        let a = AlphaVector::from_terms(n, [(p as i64, c as i64)]);
        out = out.add(&AlphaTensor::outer(&a, &image));
    }
    for ((p, q), c) in value.swapped.terms() {
        let image = ad_apply(space, x, &EqClass::beta(space, q as i64)?)?;
        let a = AlphaVector::from_terms(n, [(p as i64, c as i64)]);
        out = out.add(&AlphaTensor::outer(&image, &a));
    }
    Ok(out)
}

/// Right-hand side evaluated on given cobracket values of `Y` and `X`.
pub fn bialgebra_rhs_from(
    space: &LensPair,
    x: &EqClass,
    y: &EqClass,
    cobracket_x: &EqTensorPair,
    cobracket_y: &EqTensorPair,
) -> Result<AlphaTensor> {
    let first = ad_both(space, x, cobracket_y)?;
    let second = ad_both(space, y, cobracket_x)?;
    Ok(first.add(&second.scale(-1)))
}

pub fn bialgebra_rhs(space: &LensPair, x: &EqClass, y: &EqClass) -> Result<AlphaTensor> {
    let (lx, mx) = pi_y_parts(space, x)?;
    let (ly, my) = pi_y_parts(space, y)?;
    let cx = cobracket_pi_y(space, lx as i64, mx)?;
    let cy = cobracket_pi_y(space, ly as i64, my)?;
    bialgebra_rhs_from(space, x, y, &cx, &cy)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraVerdict {
    pub lhs: AlphaTensor,
    pub rhs: AlphaTensor,
    pub compatible: bool,
}

pub fn bialgebra_check(space: &LensPair, x: &EqClass, y: &EqClass) -> Result<BialgebraVerdict> {
    let lhs = bialgebra_lhs(space, x, y)?;
    let rhs = bialgebra_rhs(space, x, y)?;
    Ok(BialgebraVerdict {
        compatible: lhs == rhs,
        lhs,
        rhs,
    })
}
