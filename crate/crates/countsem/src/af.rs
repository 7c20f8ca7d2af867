//! Argumentation framework model and elementary set operators.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::matrix::AttackMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfError {
    #[error("argument name must not be empty")]
    EmptyName,
    #[error("duplicate argument name `{0}`")]
    DuplicateName(String),
    #[error("attack ({attacker}, {target}) references an argument outside 0..{n}")]
    AttackOutOfRange {
        attacker: usize,
        target: usize,
        n: usize,
    },
    #[error("argument index {index} outside 0..{n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// Enumeration over all subsets was requested for a framework larger than the
/// configured cap.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("framework has {n} arguments, exceeding the subset-scan cap of {cap}")]
pub struct SizeCapError {
    pub n: usize,
    pub cap: usize,
}

/// Default cap for operations that scan all `2^n` subsets.
pub const DEFAULT_SUBSET_CAP: usize = 24;

/// A set of argument indices.
///
/// Kept as an ordered index set so that results print deterministically and
/// set-level operators stay close to their definitions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArgSet {
    members: BTreeSet<usize>,
}

impl ArgSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(index: usize) -> Self {
        Self {
            members: BTreeSet::from([index]),
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    pub fn insert(&mut self, index: usize) -> bool {
        self.members.insert(index)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &ArgSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &ArgSet) -> ArgSet {
        ArgSet {
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &ArgSet) -> ArgSet {
        ArgSet {
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    /// Largest member, if any. Used for cheap range validation.
    pub fn max(&self) -> Option<usize> {
        self.members.last().copied()
    }
}

impl FromIterator<usize> for ArgSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ArgSet {
            members: iter.into_iter().collect(),
        }
    }
}

/// A finite set of named arguments with a binary attack relation.
///
/// Immutable after construction. The attack relation is stored both as a pair
/// set and as per-argument adjacency lists; the attack matrix is built on
/// demand and cached.
pub struct ArgumentationFramework {
    names: Vec<String>,
    index_of: HashMap<String, usize>,
    attacks: BTreeSet<(usize, usize)>,
    /// `attackers_of[t]`: ascending list of arguments attacking `t`.
    attackers_of: Vec<Vec<usize>>,
    /// `targets_of[a]`: ascending list of arguments attacked by `a`.
    targets_of: Vec<Vec<usize>>,
    matrix: OnceLock<AttackMatrix>,
}

impl Clone for ArgumentationFramework {
    fn clone(&self) -> Self {
        Self {
            names: self.names.clone(),
            index_of: self.index_of.clone(),
            attacks: self.attacks.clone(),
            attackers_of: self.attackers_of.clone(),
            targets_of: self.targets_of.clone(),
            matrix: OnceLock::new(),
        }
    }
}

impl PartialEq for ArgumentationFramework {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.attacks == other.attacks
    }
}

impl Eq for ArgumentationFramework {}

impl fmt::Debug for ArgumentationFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArgumentationFramework")
            .field("names", &self.names)
            .field("attacks", &self.attacks)
            .finish()
    }
}

impl ArgumentationFramework {
    /// Builds a framework from argument names (index order = given order) and
    /// attack pairs `(attacker, target)`. Duplicate attack pairs collapse;
    /// self-attacks are legal.
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        attacks: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, AfError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        let mut index_of = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(AfError::EmptyName);
            }
            if index_of.insert(name.clone(), i).is_some() {
                return Err(AfError::DuplicateName(name.clone()));
            }
        }
        let mut pairs = BTreeSet::new();
        for (attacker, target) in attacks {
            if attacker >= n || target >= n {
                return Err(AfError::AttackOutOfRange {
                    attacker,
                    target,
                    n,
                });
            }
            pairs.insert((attacker, target));
        }
        let mut attackers_of = vec![Vec::new(); n];
        let mut targets_of = vec![Vec::new(); n];
        for &(a, t) in &pairs {
            attackers_of[t].push(a);
            targets_of[a].push(t);
        }
        for list in attackers_of.iter_mut().chain(targets_of.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Self {
            names,
            index_of,
            attacks: pairs,
            attackers_of,
            targets_of,
            matrix: OnceLock::new(),
        })
    }

    pub fn argument_count(&self) -> usize {
        self.names.len()
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    pub fn argument_name(&self, index: usize) -> Result<&str, AfError> {
        self.check_index(index)?;
        Ok(&self.names[index])
    }

    pub fn argument_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index_of.get(name).copied()
    }

    /// Attack pairs `(attacker, target)` in ascending order.
    pub fn attacks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.attacks.iter().copied()
    }

    pub fn has_attack(&self, attacker: usize, target: usize) -> bool {
        self.attacks.contains(&(attacker, target))
    }

    /// Ascending list of direct attackers of `index`.
    pub fn direct_attackers(&self, index: usize) -> Result<&[usize], AfError> {
        self.check_index(index)?;
        Ok(&self.attackers_of[index])
    }

    /// Ascending list of arguments directly attacked by `index`.
    pub fn direct_targets(&self, index: usize) -> Result<&[usize], AfError> {
        self.check_index(index)?;
        Ok(&self.targets_of[index])
    }

    fn check_index(&self, index: usize) -> Result<(), AfError> {
        if index >= self.names.len() {
            return Err(AfError::IndexOutOfRange {
                index,
                n: self.names.len(),
            });
        }
        Ok(())
    }

    fn check_set(&self, set: &ArgSet) -> Result<(), AfError> {
        if let Some(max) = set.max() {
            self.check_index(max)?;
        }
        Ok(())
    }

    /// All arguments attacking some member of `set`.
    pub fn attackers(&self, set: &ArgSet) -> Result<ArgSet, AfError> {
        self.check_set(set)?;
        Ok(set
            .iter()
            .flat_map(|x| self.attackers_of[x].iter().copied())
            .collect())
    }

    /// All arguments attacked by some member of `set`.
    pub fn attacked_by(&self, set: &ArgSet) -> Result<ArgSet, AfError> {
        self.check_set(set)?;
        Ok(set
            .iter()
            .flat_map(|x| self.targets_of[x].iter().copied())
            .collect())
    }

    /// Defenders of `x`: attackers of the attackers of `x`.
    pub fn defenders_of(&self, x: usize) -> Result<ArgSet, AfError> {
        let direct = self.attackers(&ArgSet::singleton(x))?;
        self.attackers(&direct)
    }

    /// True iff no member of `set` attacks a member of `set`.
    pub fn is_conflict_free(&self, set: &ArgSet) -> Result<bool, AfError> {
        let attackers = self.attackers(set)?;
        Ok(set.intersection(&attackers).is_empty())
    }

    /// True iff every attacker of `x` is attacked by `set`.
    pub fn defends(&self, set: &ArgSet, x: usize) -> Result<bool, AfError> {
        let direct = self.attackers(&ArgSet::singleton(x))?;
        let counterattacked = self.attacked_by(set)?;
        Ok(direct.is_subset(&counterattacked))
    }

    /// Splits the framework into its weak connected components (maximal
    /// subgraphs connected by paths that ignore edge direction).
    ///
    /// Components inherit argument order from the parent and carry the
    /// induced attack relation. They are returned ordered by their smallest
    /// parent index.
    pub fn weak_connected_components(&self) -> Vec<ArgumentationFramework> {
        let n = self.names.len();
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut stack = vec![start];
            component[start] = id;
            while let Some(x) = stack.pop() {
                for &y in self.attackers_of[x].iter().chain(self.targets_of[x].iter()) {
                    if component[y] == usize::MAX {
                        component[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, &c) in component.iter().enumerate() {
            members[c].push(i);
        }
        members
            .into_iter()
            .map(|member_indices| {
                let local: HashMap<usize, usize> = member_indices
                    .iter()
                    .enumerate()
                    .map(|(local_idx, &parent_idx)| (parent_idx, local_idx))
                    .collect();
                let names: Vec<String> = member_indices
                    .iter()
                    .map(|&i| self.names[i].clone())
                    .collect();
                let attacks: Vec<(usize, usize)> = self
                    .attacks
                    .iter()
                    .filter(|(a, t)| local.contains_key(a) && local.contains_key(t))
                    .map(|(a, t)| (local[a], local[t]))
                    .collect();
                ArgumentationFramework::new(names, attacks)
                    .expect("induced subframework is valid by construction")
            })
            .collect()
    }

    /// Union of frameworks with disjoint argument names, preserving the
    /// relative argument order of each operand.
    pub fn disjoint_union(&self, other: &ArgumentationFramework) -> Result<Self, AfError> {
        let names: Vec<String> = self
            .names
            .iter()
            .chain(other.names.iter())
            .cloned()
            .collect();
        let offset = self.names.len();
        let attacks = self
            .attacks
            .iter()
            .copied()
            .chain(other.attacks.iter().map(|&(a, t)| (a + offset, t + offset)));
        ArgumentationFramework::new(names, attacks)
    }

    /// The attack matrix of the framework, built on first use.
    pub fn attack_matrix(&self) -> &AttackMatrix {
        self.matrix.get_or_init(|| AttackMatrix::from_framework(self))
    }

    /// Renders a set as a brace-delimited list of argument names.
    pub fn format_set(&self, set: &ArgSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}
