//! Truncated orthonormal bases `|J; k, m⟩` of L²(Spin(n)) and their
//! reductions to the coset spaces Spin(n)/Spin(m)×Spin(n−m).
//!
//! Every irrep `J` contributes a block of states. In full mode the left
//! index `k` runs over all weights of `J`; in coset mode it runs over an
//! orthonormal basis of the vectors annihilated by the left action of
//! `L = Spin(m) × Spin(n − m)`, found as a numerical null space. Each block
//! stores that choice as a *frame*: a `dim(J) × r` matrix whose columns are
//! the admitted left vectors, expressed in the weight basis.

mod frame;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coupling::{HalfInt, IrrepLabel, MagneticIndex, PhaseConvention};
use crate::error::{Error, Result};
use crate::group::{CMatrix, SpinGroup};

pub use frame::{invariant_frame, NULL_TOLERANCE};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceMode {
    #[default]
    Full,
    Coset,
}

impl fmt::Display for SpaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceMode::Full => "full",
            SpaceMode::Coset => "coset",
        })
    }
}

impl FromStr for SpaceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(SpaceMode::Full),
            "coset" => Ok(SpaceMode::Coset),
            other => Err(Error::Parse(format!("unknown space mode {other:?} (expected full or coset)"))),
        }
    }
}

/// Largest accepted truncation level; beyond it the full spaces no longer
/// fit in memory.
pub const MAX_J: HalfInt = HalfInt::integer(32);

/// Which truncated space to build.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub n: u8,
    pub j_max: HalfInt,
    pub mode: SpaceMode,
    /// Size `m` of the first factor of the little group; only read in coset mode.
    pub m_split: u8,
    #[serde(default)]
    pub phase: PhaseConvention,
}

impl SpaceSpec {
    pub fn full(n: u8, j_max: HalfInt) -> Self {
        SpaceSpec { n, j_max, mode: SpaceMode::Full, m_split: 1, phase: PhaseConvention::default() }
    }

    pub fn coset(n: u8, j_max: HalfInt, m_split: u8) -> Self {
        SpaceSpec { n, j_max, mode: SpaceMode::Coset, m_split, phase: PhaseConvention::default() }
    }

    pub fn with_phase(mut self, phase: PhaseConvention) -> Self {
        self.phase = phase;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.n, 3 | 4) {
            return Err(Error::UnsupportedN(self.n));
        }
        if self.j_max.twice() < 0 || self.j_max > MAX_J {
            return Err(Error::Config(format!("j_max must lie in 0..={MAX_J}, got {}", self.j_max)));
        }
        if self.m_split < 1 || self.m_split >= self.n {
            return Err(Error::Config(format!("m_split must lie in 1..={}, got {}", self.n - 1, self.m_split)));
        }
        Ok(())
    }
}

/// Left index of a basis state.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeftIndex {
    /// A weight of `J` (full mode).
    Weight(MagneticIndex),
    /// The `r`-th L-invariant vector of the block (coset mode).
    Invariant(usize),
}

/// Invariant vectors print as `0` (the first) and `0#r` after that, so the
/// usual "k = 0" reading survives when the frame is not literally a weight.
impl fmt::Display for LeftIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeftIndex::Weight(w) => write!(f, "{w}"),
            LeftIndex::Invariant(0) => write!(f, "0"),
            LeftIndex::Invariant(r) => write!(f, "0#{r}"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub label: IrrepLabel,
    pub k: LeftIndex,
    pub m: MagneticIndex,
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}; {}, {}⟩", self.label, self.k, self.m)
    }
}

/// One irrep block of the basis.
#[derive(Clone, Debug)]
pub struct Block {
    pub label: IrrepLabel,
    /// `dim(J) × r` matrix of admitted left vectors.
    pub frame: CMatrix,
    /// Position of the block's first state.
    pub offset: usize,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.label.dim()
    }

    pub fn multiplicity(&self) -> usize {
        self.frame.ncols()
    }

    pub fn len(&self) -> usize {
        self.dim() * self.multiplicity()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of `(r, m-position)` inside the whole basis.
    pub fn index(&self, r: usize, m_pos: usize) -> usize {
        self.offset + r * self.dim() + m_pos
    }
}

/// Ordered basis: by `J` (level, then parts), then `k`, then `m`.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    spec: SpaceSpec,
    group: SpinGroup,
    states: Vec<BasisState>,
    lookup: HashMap<BasisState, usize>,
    blocks: Vec<Block>,
}

impl BasisIndex {
    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn group(&self) -> &SpinGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &BasisState {
        &self.states[i]
    }

    pub fn position(&self, s: &BasisState) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, label: IrrepLabel) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    /// Positions of states with level `≤ j_max − margin`.
    pub fn interior(&self, margin: HalfInt) -> Vec<usize> {
        interior_projector(self, margin)
    }
}

/// Enumerate the truncated basis described by `spec`.
pub fn enumerate_basis(spec: SpaceSpec) -> Result<BasisIndex> {
    spec.validate()?;
    let group = SpinGroup::new(spec.n, spec.phase)?;
    let little = group.little_group_pairs(spec.m_split);
    let mut blocks = Vec::new();
    let mut states = Vec::new();
    for label in IrrepLabel::all_up_to(spec.n, spec.j_max)? {
        let frame = match spec.mode {
            SpaceMode::Full => CMatrix::identity(label.dim(), label.dim()),
            SpaceMode::Coset => invariant_frame(&group, label, &little)?,
        };
        if frame.ncols() == 0 {
            continue;
        }
        let weights = label.weights();
        let offset = states.len();
        for r in 0..frame.ncols() {
            let k = match spec.mode {
                SpaceMode::Full => LeftIndex::Weight(weights[r]),
                SpaceMode::Coset => LeftIndex::Invariant(r),
            };
            states.extend(weights.iter().map(|&m| BasisState { label, k, m }));
        }
        blocks.push(Block { label, frame, offset });
    }
    let lookup = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    Ok(BasisIndex { spec, group, states, lookup, blocks })
}

/// Positions of the states whose level is at most `j_max − margin`, i.e. far
/// enough from the cutoff that operators shifting the level by up to
/// `margin` see no truncation.
pub fn interior_projector(index: &BasisIndex, margin: HalfInt) -> Vec<usize> {
    let limit = index.spec.j_max - margin;
    index.states.iter().enumerate().filter(|(_, s)| s.label.level() <= limit).map(|(i, _)| i).collect()
}

/// Number of independent left vectors kept for each irrep present.
pub fn multiplicity_audit(index: &BasisIndex) -> BTreeMap<IrrepLabel, usize> {
    index.blocks.iter().map(|b| (b.label, b.multiplicity())).collect()
}
