//! Homotopy and homeomorphism classification of 3-dimensional lens spaces,
//! and the search for pairs the string cobracket separates but the string
//! coproduct does not.
//!
//! `L(n;k) ≃ L(n;k')` iff `k k' ≡ ±q² (mod n)` for some `q`, and
//! `L(n;k) ≅ L(n;k')` iff `k' ≡ ±k^{±1} (mod n)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::residue;
use crate::equivariant::{count_nonzero, count_nonzero_coproduct, Convention, CountReport};
use crate::error::{Error, Result};
use crate::loop_homology::LensPair;

/// `k k' ≡ sign · q² (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareWitness {
    pub q: u32,
    pub sign: i8,
}

/// `k' ≡ sign · k^exponent (mod n)` with `exponent = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitWitness {
    pub sign: i8,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub n: u32,
    pub k: u32,
    pub k2: u32,
    pub homotopy_equivalent: bool,
    pub homeomorphic: bool,
    pub square_witness: Option<SquareWitness>,
    pub unit_witness: Option<UnitWitness>,
}

fn spaces(n: u32, k: i64, k2: i64) -> Result<(LensPair, LensPair)> {
    Ok((LensPair::new(n, k)?, LensPair::new(n, k2)?))
}

/// Smallest `q` (and `+` before `-`) with `k k' ≡ ±q²`.
pub fn homotopy_witness(n: u32, k: i64, k2: i64) -> Result<Option<SquareWitness>> {
    let (a, b) = spaces(n, k, k2)?;
    let n64 = n as u64;
    let prod = a.k() as u64 * b.k() as u64 % n64;
    for q in 1..n64 {
        let sq = q * q % n64;
        if sq == prod {
            return Ok(Some(SquareWitness {
                q: q as u32,
                sign: 1,
            }));
        }
        if (n64 - sq) % n64 == prod {
            return Ok(Some(SquareWitness {
                q: q as u32,
                sign: -1,
            }));
        }
    }
    Ok(None)
}

pub fn homotopy_equivalent(n: u32, k: i64, k2: i64) -> Result<bool> {
    Ok(homotopy_witness(n, k, k2)?.is_some())
}

pub fn homeomorphism_witness(n: u32, k: i64, k2: i64) -> Result<Option<UnitWitness>> {
    let (a, b) = spaces(n, k, k2)?;
    for (exponent, base) in [(1i8, a.k()), (-1, a.r())] {
        for sign in [1i8, -1] {
            if residue(sign as i64 * base as i64, n) == b.k() {
                return Ok(Some(UnitWitness { sign, exponent }));
            }
        }
    }
    Ok(None)
}

pub fn homeomorphic(n: u32, k: i64, k2: i64) -> Result<bool> {
    Ok(homeomorphism_witness(n, k, k2)?.is_some())
}

pub fn classify_pair(n: u32, k: i64, k2: i64) -> Result<PairVerdict> {
    let square_witness = homotopy_witness(n, k, k2)?;
    let unit_witness = homeomorphism_witness(n, k, k2)?;
    Ok(PairVerdict {
        n,
        k: residue(k, n),
        k2: residue(k2, n),
        homotopy_equivalent: square_witness.is_some(),
        homeomorphic: unit_witness.is_some(),
        square_witness,
        unit_witness,
    })
}

/// Smallest element of `{±k, ±k⁻¹} mod n`.
pub fn homeomorphism_representative(space: &LensPair) -> u32 {
    let n = space.n();
    [space.k(), space.r()]
        .into_iter()
        .flat_map(|x| [x, residue(-(x as i64), n)])
        .min()
        .expect("four candidates")
}

/// Nonzero counts of one lens space under every convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCounts {
    pub generator_sum: usize,
    pub component_union: usize,
    pub pi_family: usize,
}

impl SideCounts {
    fn of(report: &CountReport) -> Self {
        Self {
            generator_sum: report.generator_count,
            component_union: report.component_union_count,
            pi_family: report.pi_family_count,
        }
    }

    pub fn get(&self, convention: Convention) -> usize {
        match convention {
            Convention::GeneratorSum => self.generator_sum,
            Convention::ComponentUnion => self.component_union,
            Convention::PiFamily => self.pi_family,
        }
    }
}

/// A homotopy-equivalent, non-homeomorphic pair `L(n;k)`, `L(n;k2)` with
/// `k < k2`, each the smallest representative of its homeomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub n: u32,
    pub k: u32,
    pub k2: u32,
    pub coproduct: [SideCounts; 2],
    pub cobracket: [SideCounts; 2],
}

impl SearchRow {
    pub fn coproduct_counts(&self, convention: Convention) -> (usize, usize) {
        (
            self.coproduct[0].get(convention),
            self.coproduct[1].get(convention),
        )
    }

    pub fn cobracket_counts(&self, convention: Convention) -> (usize, usize) {
        (
            self.cobracket[0].get(convention),
            self.cobracket[1].get(convention),
        )
    }

    /// Coproduct counts agree and cobracket counts differ.
    pub fn qualifies(&self, convention: Convention) -> bool {
        let (a, b) = self.coproduct_counts(convention);
        let (c, d) = self.cobracket_counts(convention);
        a == b && c != d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub max_n: u32,
    pub convention: Convention,
    /// Every candidate pair, ordered by `(n, k, k2)`.
    pub rows: Vec<SearchRow>,
    /// First qualifying row per convention.
    pub smallest: BTreeMap<Convention, Option<SearchRow>>,
}

impl SearchReport {
    pub fn qualifying(&self, convention: Convention) -> impl Iterator<Item = &SearchRow> {
        self.rows.iter().filter(move |r| r.qualifies(convention))
    }

    /// First qualifying row under the report's own convention.
    pub fn smallest_pair(&self) -> Option<&SearchRow> {
        self.smallest.get(&self.convention).and_then(Option::as_ref)
    }
}

fn rows_for(n: u32) -> Vec<SearchRow> {
    let mut reps: Vec<LensPair> = (1..n as i64)
        .filter_map(|k| LensPair::new(n, k).ok())
        .filter(|s| homeomorphism_representative(s) == s.k())
        .collect();
    reps.sort();
    let counts: Vec<(SideCounts, SideCounts)> = reps
        .iter()
        .map(|s| {
            (
                SideCounts::of(&count_nonzero_coproduct(s, Convention::GeneratorSum)),
                SideCounts::of(&count_nonzero(s, Convention::GeneratorSum)),
            )
        })
        .collect();
    let mut rows = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let (a, b) = (reps[i], reps[j]);
            let equivalent = homotopy_equivalent(n, a.k() as i64, b.k() as i64)
                .expect("representatives are units");
            if equivalent {
                rows.push(SearchRow {
                    n,
                    k: a.k(),
                    k2: b.k(),
                    coproduct: [counts[i].0, counts[j].0],
                    cobracket: [counts[i].1, counts[j].1],
                });
            }
        }
    }
    rows
}

/// Sweeps every `n ≤ max_n` in parallel; output order does not depend on
/// scheduling.
pub fn search_smallest(max_n: u32, convention: Convention) -> Result<SearchReport> {
    if max_n < 2 {
        return Err(Error::InvalidOrder { n: max_n, min: 2 });
    }
    let rows: Vec<SearchRow> = (2..=max_n)
        .into_par_iter()
        .map(rows_for)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let smallest = Convention::ALL
        .into_iter()
        .map(|c| (c, rows.iter().find(|r| r.qualifies(c)).cloned()))
        .collect();
    Ok(SearchReport {
        max_n,
        convention,
        rows,
        smallest,
    })
}
