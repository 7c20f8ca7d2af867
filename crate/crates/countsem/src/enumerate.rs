//! Brute-force enumeration of the classical semantics.
//!
//! Every subset of the arguments is tested directly against the defining
//! predicate, in ascending bitset order. This is deliberately the slow,
//! definition-level route: it acts as the ground truth for the boolean-matrix
//! computations and is capped at [`DEFAULT_SUBSET_CAP`] arguments by default.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::af::{ArgSet, ArgumentationFramework, SizeCapError, DEFAULT_SUBSET_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemanticsKind {
    ConflictFree,
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 6] = [
        SemanticsKind::ConflictFree,
        SemanticsKind::Admissible,
        SemanticsKind::Complete,
        SemanticsKind::Grounded,
        SemanticsKind::Preferred,
        SemanticsKind::Stable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsKind::ConflictFree => "conflict-free",
            SemanticsKind::Admissible => "admissible",
            SemanticsKind::Complete => "complete",
            SemanticsKind::Grounded => "grounded",
            SemanticsKind::Preferred => "preferred",
            SemanticsKind::Stable => "stable",
        }
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conflict-free" | "cf" => Ok(SemanticsKind::ConflictFree),
            "admissible" | "adm" => Ok(SemanticsKind::Admissible),
            "complete" | "co" => Ok(SemanticsKind::Complete),
            "grounded" | "gr" => Ok(SemanticsKind::Grounded),
            "preferred" | "pr" => Ok(SemanticsKind::Preferred),
            "stable" | "st" => Ok(SemanticsKind::Stable),
            other => Err(format!(
                "unknown semantics `{other}` (expected one of conflict-free, admissible, \
                 complete, grounded, preferred, stable)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error(transparent)]
    SizeCap(#[from] SizeCapError),
    #[error("set member {index} outside 0..{n}")]
    InvalidSet { index: usize, n: usize },
}

/// Per-argument attack masks; subsets are machine words during the scan.
struct Masks {
    n: usize,
    full: u64,
    /// `attackers[i]`: bitmask of the direct attackers of `i`.
    attackers: Vec<u64>,
    /// `targets[i]`: bitmask of the arguments attacked by `i`.
    targets: Vec<u64>,
}

impl Masks {
    fn build(af: &ArgumentationFramework, cap: usize) -> Result<Self, SizeCapError> {
        let n = af.argument_count();
        if n > cap || n > 63 {
            return Err(SizeCapError {
                n,
                cap: cap.min(63),
            });
        }
        let mut attackers = vec![0u64; n];
        let mut targets = vec![0u64; n];
        for (a, t) in af.attacks() {
            attackers[t] |= 1 << a;
            targets[a] |= 1 << t;
        }
        let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
        Ok(Self {
            n,
            full,
            attackers,
            targets,
        })
    }

    fn attacked_by(&self, s: u64) -> u64 {
        let mut out = 0;
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.targets[i];
        }
        out
    }

    fn conflict_free(&self, s: u64) -> bool {
        s & self.attacked_by(s) == 0
    }

    /// Arguments whose every attacker is counter-attacked by `s`.
    fn defended_by(&self, s: u64) -> u64 {
        let counter = self.attacked_by(s);
        let mut out = 0;
        for i in 0..self.n {
            if self.attackers[i] & !counter == 0 {
                out |= 1 << i;
            }
        }
        out
    }

    fn admissible(&self, s: u64) -> bool {
        self.conflict_free(s) && s & !self.defended_by(s) == 0
    }

    fn complete(&self, s: u64) -> bool {
        self.conflict_free(s) && s == self.defended_by(s)
    }

    fn stable(&self, s: u64) -> bool {
        self.conflict_free(s) && s == self.full & !self.attacked_by(s)
    }
}

fn mask_to_set(mask: u64) -> ArgSet {
    let mut rest = mask;
    let mut set = ArgSet::new();
    while rest != 0 {
        set.insert(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    set
}

fn complete_masks(masks: &Masks) -> Vec<u64> {
    (0..=masks.full)
        .filter(|&s| masks.complete(s))
        .collect()
}

/// All extensions of the given kind, in ascending bitset order.
pub fn enumerate(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    cap: usize,
) -> Result<Vec<ArgSet>, SizeCapError> {
    let masks = Masks::build(af, cap)?;
    let selected: Vec<u64> = match kind {
        SemanticsKind::ConflictFree => (0..=masks.full).filter(|&s| masks.conflict_free(s)).collect(),
        SemanticsKind::Admissible => (0..=masks.full).filter(|&s| masks.admissible(s)).collect(),
        SemanticsKind::Complete => complete_masks(&masks),
        SemanticsKind::Stable => (0..=masks.full).filter(|&s| masks.stable(s)).collect(),
        SemanticsKind::Grounded => {
            let completes = complete_masks(&masks);
            let minimal: Vec<u64> = completes
                .iter()
                .copied()
                .filter(|&s| !completes.iter().any(|&t| t != s && t & !s == 0))
                .collect();
            debug_assert_eq!(minimal.len(), 1, "the grounded extension is unique");
            minimal
        }
        SemanticsKind::Preferred => {
            let completes = complete_masks(&masks);
            completes
                .iter()
                .copied()
                .filter(|&s| !completes.iter().any(|&t| t != s && s & !t == 0))
                .collect()
        }
    };
    Ok(selected.into_iter().map(mask_to_set).collect())
}

/// Tests a single set against the defining predicate of `kind`. Grounded and
/// preferred require comparison against all complete extensions and share the
/// subset cap.
pub fn verify(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    set: &ArgSet,
    cap: usize,
) -> Result<bool, EnumError> {
    let masks = Masks::build(af, cap)?;
    if let Some(max) = set.max() {
        if max >= masks.n {
            return Err(EnumError::InvalidSet {
                index: max,
                n: masks.n,
            });
        }
    }
    let s: u64 = set.iter().fold(0, |acc, i| acc | 1 << i);
    let verdict = match kind {
        SemanticsKind::ConflictFree => masks.conflict_free(s),
        SemanticsKind::Admissible => masks.admissible(s),
        SemanticsKind::Complete => masks.complete(s),
        SemanticsKind::Stable => masks.stable(s),
        SemanticsKind::Grounded => {
            masks.complete(s)
                && !complete_masks(&masks)
                    .iter()
                    .any(|&t| t != s && t & !s == 0)
        }
        SemanticsKind::Preferred => {
            masks.complete(s)
                && !complete_masks(&masks)
                    .iter()
                    .any(|&t| t != s && s & !t == 0)
        }
    };
    Ok(verdict)
}

/// Convenience wrapper using [`DEFAULT_SUBSET_CAP`].
pub fn enumerate_default(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
) -> Result<Vec<ArgSet>, SizeCapError> {
    enumerate(af, kind, DEFAULT_SUBSET_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{example1, random_af, seeded};
    use rand::Rng;

    fn sets(af: &ArgumentationFramework, kind: SemanticsKind) -> Vec<ArgSet> {
        enumerate_default(af, kind).unwrap()
    }

    fn set(indices: &[usize]) -> ArgSet {
        indices.iter().copied().collect()
    }

    #[test]
    fn example1_admissible_sets() {
        // The empty set is admissible by definition; the worked example lists
        // only the nonempty ones.
        let af = example1();
        assert_eq!(
            sets(&af, SemanticsKind::Admissible),
            vec![set(&[]), set(&[3]), set(&[0, 3])]
        );
    }

    #[test]
    fn example1_preferred_grounded_stable() {
        let af = example1();
        assert_eq!(sets(&af, SemanticsKind::Preferred), vec![set(&[0, 3])]);
        assert_eq!(sets(&af, SemanticsKind::Grounded), vec![set(&[0, 3])]);
        assert_eq!(sets(&af, SemanticsKind::Stable), Vec::<ArgSet>::new());
    }

    #[test]
    fn example1_verify_membership() {
        let af = example1();
        assert!(verify(&af, SemanticsKind::Complete, &set(&[0, 3]), 24).unwrap());
        assert!(verify(&af, SemanticsKind::ConflictFree, &set(&[]), 24).unwrap());
        assert!(!verify(&af, SemanticsKind::Stable, &set(&[0, 3]), 24).unwrap());
    }

    #[test]
    fn verify_rejects_invalid_set() {
        let af = example1();
        let err = verify(&af, SemanticsKind::Complete, &set(&[7]), 24).unwrap_err();
        assert_eq!(err, EnumError::InvalidSet { index: 7, n: 4 });
    }

    #[test]
    fn cap_is_enforced() {
        let af = random_af(&mut seeded(3), 6, 0.2);
        let err = enumerate(&af, SemanticsKind::Complete, 5).unwrap_err();
        assert_eq!(err.n, 6);
        assert_eq!(err.cap, 5);
    }

    #[test]
    fn verify_agrees_with_enumerate() {
        let mut rng = seeded(103);
        for _ in 0..20 {
            let n = rng.random_range(1..=6usize);
            let af = random_af(&mut rng, n, 0.3);
            for kind in SemanticsKind::ALL {
                let listed = sets(&af, kind);
                for mask in 0u64..(1 << n) {
                    let s = mask_to_set(mask);
                    let expected = listed.contains(&s);
                    assert_eq!(
                        verify(&af, kind, &s, 24).unwrap(),
                        expected,
                        "verify must agree with enumerate for {kind}"
                    );
                }
            }
        }
    }

    #[test]
    fn inclusion_chain_holds() {
        let mut rng = seeded(107);
        for _ in 0..40 {
            let n = rng.random_range(1..=7usize);
            let af = random_af(&mut rng, n, 0.3);
            let stable = sets(&af, SemanticsKind::Stable);
            let preferred = sets(&af, SemanticsKind::Preferred);
            let complete = sets(&af, SemanticsKind::Complete);
            let admissible = sets(&af, SemanticsKind::Admissible);
            let conflict_free = sets(&af, SemanticsKind::ConflictFree);
            for s in &stable {
                assert!(preferred.contains(s), "stable must be preferred");
            }
            for s in &preferred {
                assert!(complete.contains(s), "preferred must be complete");
            }
            for s in &complete {
                assert!(admissible.contains(s), "complete must be admissible");
            }
            for s in &admissible {
                assert!(conflict_free.contains(s), "admissible must be conflict-free");
            }
        }
    }

    #[test]
    fn grounded_is_unique_and_minimal_complete() {
        let mut rng = seeded(109);
        for _ in 0..40 {
            let n = rng.random_range(1..=7usize);
            let af = random_af(&mut rng, n, 0.3);
            let grounded = sets(&af, SemanticsKind::Grounded);
            assert_eq!(grounded.len(), 1, "grounded extension must be unique");
            let complete = sets(&af, SemanticsKind::Complete);
            for c in &complete {
                assert!(
                    grounded[0].is_subset(c),
                    "grounded must be contained in every complete extension"
                );
            }
        }
    }

    #[test]
    fn preferred_equals_maximal_admissible() {
        let mut rng = seeded(113);
        for _ in 0..40 {
            let n = rng.random_range(1..=7usize);
            let af = random_af(&mut rng, n, 0.3);
            let preferred = sets(&af, SemanticsKind::Preferred);
            let admissible = sets(&af, SemanticsKind::Admissible);
            let maximal_admissible: Vec<ArgSet> = admissible
                .iter()
                .filter(|s| {
                    !admissible
                        .iter()
                        .any(|t| *t != **s && s.is_subset(t))
                })
                .cloned()
                .collect();
            assert_eq!(preferred, maximal_admissible);
        }
    }

    #[test]
    fn kind_names_roundtrip() {
        for kind in SemanticsKind::ALL {
            assert_eq!(kind.name().parse::<SemanticsKind>().unwrap(), kind);
        }
        assert!("bogus".parse::<SemanticsKind>().is_err());
    }
}
