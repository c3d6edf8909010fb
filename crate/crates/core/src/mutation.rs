//! The signed braid group action on Gram matrices.
//!
//! The group on n strands has mutation generators σ_1..σ_{n-1}, their
//! inverses, and sign generators ε_1..ε_n. A mutation at i replaces the
//! basis pair (e_i, e_{i+1}) by (e_{i+1} - <e_i,e_{i+1}> e_i, e_i), the
//! class-level shadow of left mutation of an exceptional pair; ε_i negates
//! the i-th basis vector (the shadow of shifting one object). Every
//! generator is a unimodular base change, so Gram matrices map to Gram
//! matrices and all lattice invariants of the Serre matrix are preserved.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::eulerform::GramMatrix;
use crate::exactmat::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Sigma,
    SigmaInverse,
    Epsilon,
}

/// One generator of the signed braid group, with 1-based index:
/// 1 <= index <= n-1 for the sigma kinds, 1 <= index <= n for epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidGenerator {
    pub kind: GeneratorKind,
    pub index: usize,
}

/// A word in the signed braid group, acting on Gram matrices of a fixed
/// rank. Generators are stored in textual order; application is
/// rightmost-first, i.e. the word acts as the composition g_1 ∘ ... ∘ g_k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    rank: usize,
    generators: Vec<BraidGenerator>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error("generator index {index} out of range for rank {rank} ({kind:?})")]
    IndexOutOfRange {
        kind: GeneratorKind,
        index: usize,
        rank: usize,
    },
    #[error("word of rank {word_rank} applied to a matrix of rank {matrix_rank}")]
    RankMismatch { word_rank: usize, matrix_rank: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseWordError {
    #[error("token {position}: unrecognized token {token:?} (expected s<k>, S<k> or e<k>)")]
    BadToken { position: usize, token: String },
    #[error("token {position}: {source}")]
    BadIndex {
        position: usize,
        #[source]
        source: MutationError,
    },
}

impl BraidGenerator {
    pub fn sigma(index: usize) -> Self {
        BraidGenerator {
            kind: GeneratorKind::Sigma,
            index,
        }
    }

    pub fn sigma_inverse(index: usize) -> Self {
        BraidGenerator {
            kind: GeneratorKind::SigmaInverse,
            index,
        }
    }

    pub fn epsilon(index: usize) -> Self {
        BraidGenerator {
            kind: GeneratorKind::Epsilon,
            index,
        }
    }

    pub fn validate(&self, rank: usize) -> Result<(), MutationError> {
        let max = match self.kind {
            GeneratorKind::Sigma | GeneratorKind::SigmaInverse => rank.saturating_sub(1),
            GeneratorKind::Epsilon => rank,
        };
        if self.index == 0 || self.index > max {
            return Err(MutationError::IndexOutOfRange {
                kind: self.kind,
                index: self.index,
                rank,
            });
        }
        Ok(())
    }

    pub fn inverse(&self) -> BraidGenerator {
        let kind = match self.kind {
            GeneratorKind::Sigma => GeneratorKind::SigmaInverse,
            GeneratorKind::SigmaInverse => GeneratorKind::Sigma,
            GeneratorKind::Epsilon => GeneratorKind::Epsilon,
        };
        BraidGenerator {
            kind,
            index: self.index,
        }
    }
}

impl std::fmt::Display for BraidGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            GeneratorKind::Sigma => write!(f, "s{}", self.index),
            GeneratorKind::SigmaInverse => write!(f, "S{}", self.index),
            GeneratorKind::Epsilon => write!(f, "e{}", self.index),
        }
    }
}

impl BraidWord {
    pub fn new(rank: usize, generators: Vec<BraidGenerator>) -> Result<Self, MutationError> {
        for g in &generators {
            g.validate(rank)?;
        }
        Ok(BraidWord { rank, generators })
    }

    pub fn empty(rank: usize) -> Self {
        BraidWord {
            rank,
            generators: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[BraidGenerator] {
        &self.generators
    }

    /// The inverse word: reversed with every generator inverted, so that
    /// `w.inverse()` undoes `w` as an action.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            rank: self.rank,
            generators: self.generators.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Concatenation `self · other` as actions: `other` is applied first.
    pub fn then_after(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.rank, other.rank, "rank mismatch in word composition");
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().copied());
        BraidWord {
            rank: self.rank,
            generators,
        }
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for g in &self.generators {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

/// Apply a single generator to a Gram matrix.
///
/// For σ_i with a = M[i, i+1], the base change sends e_i to
/// e_{i+1} - a·e_i and e_{i+1} to e_i; for σ_i^-1 with b = M[i, i+1] it
/// sends e_i to e_{i+1} and e_{i+1} to e_i - b·e_{i+1}; ε_i negates e_i.
/// In all three cases the result is P^t M P for the base-change matrix P,
/// and is again unit upper-triangular.
pub fn apply_generator(m: &GramMatrix, g: BraidGenerator) -> Result<GramMatrix, MutationError> {
    g.validate(m.n())?;
    let n = m.n();
    let p = match g.kind {
        GeneratorKind::Sigma => {
            let i = g.index - 1;
            let a = m.at(i, i + 1).clone();
            IntMatrix::from_fn(n, |r, c| {
                if c == i {
                    if r == i {
                        -a.clone()
                    } else if r == i + 1 {
                        BigInt::one()
                    } else {
                        BigInt::from(0)
                    }
                } else if c == i + 1 {
                    if r == i {
                        BigInt::one()
                    } else {
                        BigInt::from(0)
                    }
                } else if r == c {
                    BigInt::one()
                } else {
                    BigInt::from(0)
                }
            })
        }
        GeneratorKind::SigmaInverse => {
            let i = g.index - 1;
            let b = m.at(i, i + 1).clone();
            IntMatrix::from_fn(n, |r, c| {
                if c == i {
                    if r == i + 1 {
                        BigInt::one()
                    } else {
                        BigInt::from(0)
                    }
                } else if c == i + 1 {
                    if r == i {
                        BigInt::one()
                    } else if r == i + 1 {
                        -b.clone()
                    } else {
                        BigInt::from(0)
                    }
                } else if r == c {
                    BigInt::one()
                } else {
                    BigInt::from(0)
                }
            })
        }
        GeneratorKind::Epsilon => {
            let i = g.index - 1;
            IntMatrix::from_fn(n, |r, c| {
                if r != c {
                    BigInt::from(0)
                } else if r == i {
                    BigInt::from(-1)
                } else {
                    BigInt::one()
                }
            })
        }
    };
    let result = p.transpose().mul(m.as_int_matrix()).mul(&p);
    Ok(GramMatrix::new(result)
        .expect("signed braid generators preserve unit upper-triangular form"))
}

/// Apply a word rightmost-generator-first, i.e. as the composition
/// g_1 ∘ g_2 ∘ ... ∘ g_k of its generators in textual order.
pub fn apply_word(m: &GramMatrix, w: &BraidWord) -> Result<GramMatrix, MutationError> {
    if w.rank() != m.n() {
        return Err(MutationError::RankMismatch {
            word_rank: w.rank(),
            matrix_rank: m.n(),
        });
    }
    let mut current = m.clone();
    for g in w.generators().iter().rev() {
        current = apply_generator(&current, *g)?;
    }
    Ok(current)
}

/// Parse a whitespace-separated word: `s<k>` for σ_k, `S<k>` for σ_k^-1,
/// `e<k>` for ε_k. Textual order is preserved; the empty string parses to
/// the empty word.
pub fn parse_word(text: &str, rank: usize) -> Result<BraidWord, ParseWordError> {
    let mut generators = Vec::new();
    for (idx, token) in text.split_whitespace().enumerate() {
        let position = idx + 1;
        let bad = || ParseWordError::BadToken {
            position,
            token: token.to_string(),
        };
        let (head, tail) = token.split_at(1);
        let kind = match head {
            "s" => GeneratorKind::Sigma,
            "S" => GeneratorKind::SigmaInverse,
            "e" => GeneratorKind::Epsilon,
            _ => return Err(bad()),
        };
        let index: usize = tail.parse().map_err(|_| bad())?;
        let g = BraidGenerator { kind, index };
        g.validate(rank)
            .map_err(|source| ParseWordError::BadIndex { position, source })?;
        generators.push(g);
    }
    Ok(BraidWord { rank, generators })
}

/// Result of checking the signed braid relations on pseudorandom matrices.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub rank: usize,
    pub trials: usize,
    pub relations_checked: usize,
    pub passed: bool,
    pub first_failure: Option<RelationFailure>,
}

#[derive(Debug, Clone)]
pub struct RelationFailure {
    pub relation: String,
    pub trial: usize,
    pub matrix: GramMatrix,
}

/// Pseudorandom Gram matrix with strict upper entries uniform in
/// [-entry_bound, entry_bound]; deterministic in the generator state.
fn random_gram(n: usize, entry_bound: i64, rng: &mut ChaCha8Rng) -> GramMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 1;
        for item in row.iter_mut().skip(i + 1) {
            *item = rng.random_range(-entry_bound..=entry_bound);
        }
    }
    GramMatrix::from_rows(&rows).expect("generated matrix is unit upper-triangular")
}

/// Check every defining relation of the signed braid group, plus
/// σ σ^-1 = σ^-1 σ = id, as exact equalities of matrix actions on `trials`
/// seeded pseudorandom Gram matrices.
pub fn verify_braid_relations(
    n: usize,
    trials: usize,
    entry_bound: i64,
    seed: u64,
) -> RelationReport {
    assert!(n >= 2, "relations need rank at least 2");
    let mut relations: Vec<(String, Vec<BraidGenerator>, Vec<BraidGenerator>)> = Vec::new();
    let sigma = BraidGenerator::sigma;
    let eps = BraidGenerator::epsilon;

    // σ_i σ_j = σ_j σ_i for |i - j| >= 2
    for i in 1..n {
        for j in i + 2..n {
            relations.push((
                format!("s{i} s{j} = s{j} s{i}"),
                vec![sigma(i), sigma(j)],
                vec![sigma(j), sigma(i)],
            ));
        }
    }
    // σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}
    for i in 1..n.saturating_sub(1) {
        relations.push((
            format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
            vec![sigma(i), sigma(i + 1), sigma(i)],
            vec![sigma(i + 1), sigma(i), sigma(i + 1)],
        ));
    }
    // ε_i² = 1
    for i in 1..=n {
        relations.push((format!("e{i} e{i} = 1"), vec![eps(i), eps(i)], vec![]));
    }
    // ε_i ε_j = ε_j ε_i
    for i in 1..=n {
        for j in i + 1..=n {
            relations.push((
                format!("e{i} e{j} = e{j} e{i}"),
                vec![eps(i), eps(j)],
                vec![eps(j), eps(i)],
            ));
        }
    }
    // ε_i σ_i ε_{i+1} = σ_i
    for i in 1..n {
        relations.push((
            format!("e{i} s{i} e{} = s{i}", i + 1),
            vec![eps(i), sigma(i), eps(i + 1)],
            vec![sigma(i)],
        ));
    }
    // σ_i σ_i^-1 = σ_i^-1 σ_i = 1
    for i in 1..n {
        relations.push((
            format!("s{i} S{i} = 1"),
            vec![sigma(i), BraidGenerator::sigma_inverse(i)],
            vec![],
        ));
        relations.push((
            format!("S{i} s{i} = 1"),
            vec![BraidGenerator::sigma_inverse(i), sigma(i)],
            vec![],
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first_failure = None;
    let mut passed = true;
    'outer: for trial in 0..trials {
        let m = random_gram(n, entry_bound, &mut rng);
        for (name, lhs, rhs) in &relations {
            let left = apply_word(&m, &BraidWord::new(n, lhs.clone()).unwrap()).unwrap();
            let right = apply_word(&m, &BraidWord::new(n, rhs.clone()).unwrap()).unwrap();
            if left != right {
                passed = false;
                first_failure = Some(RelationFailure {
                    relation: name.clone(),
                    trial,
                    matrix: m.clone(),
                });
                break 'outer;
            }
        }
    }
    RelationReport {
        rank: n,
        trials,
        relations_checked: relations.len(),
        passed,
        first_failure,
    }
}
