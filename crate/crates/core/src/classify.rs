//! Bounded enumeration of surface-type Gram matrices and orbit search under
//! the signed braid action: canonical forms, equivalence witnesses, and the
//! desk-scale consistency check of the rank-4 classification.
//!
//! Orbit exploration is a breadth-first search over hash-consed states. A
//! state is the strict upper triangle of a Gram matrix in machine integers;
//! states whose entries exceed the configured cap are pruned, which makes
//! the search finite (entries grow without bound along mutation words).
//! Everything is deterministic: fixed generator order, fixed expansion
//! order, and a total (max-abs-entry, lexicographic) order on states.

use std::collections::VecDeque;

use indexmap::IndexMap;
use num_rational::BigRational;
use thiserror::Error;

use crate::eulerform::{GramMatrix, SURFACE_RANK};
use crate::exactmat::RatMatrix;
use crate::mutation::{apply_word, BraidGenerator, BraidWord, GeneratorKind};
use crate::ncalgebra::{gram_family, gram_p2, gram_quadric};

/// Budgets for enumeration and orbit exploration. Defaults are sized so the
/// rank-4 searches complete in minutes on commodity hardware.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    /// Maximum |entry| while enumerating candidate matrices.
    pub entry_bound_enumeration: i64,
    /// Maximum |entry| allowed in any state visited during orbit search.
    pub entry_cap_orbit: i64,
    /// Maximum number of states visited per orbit search.
    pub max_orbit_size: usize,
    /// Maximum generator-word length explored (BFS depth).
    pub max_word_length: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            entry_bound_enumeration: 8,
            entry_cap_orbit: 200,
            max_orbit_size: 2_000_000,
            max_word_length: 40,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if self.entry_bound_enumeration <= 0
            || self.entry_cap_orbit <= 0
            || self.max_orbit_size == 0
            || self.max_word_length == 0
        {
            return Err(ClassifyError::InvalidParams);
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("all search parameters must be positive")]
    InvalidParams,
    #[error("matrices have different ranks: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("matrix entries do not fit the orbit-search state representation")]
    EntriesTooLarge,
    #[error("orbit search budget exhausted (visited {visited} states)")]
    BudgetExhausted {
        visited: usize,
        /// Best certificate found before the budget ran out.
        best: Box<OrbitCertificate>,
    },
}

/// Conjugation-invariant data of the Serre matrix: its characteristic
/// polynomial and the rank of s - id. Equal along every braid orbit, so a
/// mismatch certifies inequivalence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub charpoly_serre: Vec<BigRational>,
    pub rank_s_minus_id: usize,
}

pub fn fingerprint(m: &GramMatrix) -> Fingerprint {
    let s = m.serre_matrix().to_rat();
    let s_minus_id = s.sub(&RatMatrix::identity(m.n()));
    Fingerprint {
        charpoly_serre: s.charpoly(),
        rank_s_minus_id: s_minus_id.rank(),
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "charpoly(s) = [")?;
        for (i, c) in self.charpoly_serre.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "], rank(s - id) = {}", self.rank_s_minus_id)
    }
}

/// Result of canonicalizing a matrix: the representative of its (bounded)
/// orbit, a replayable word sending the input to the representative, and
/// the orbit invariants.
#[derive(Debug, Clone)]
pub struct OrbitCertificate {
    pub representative: GramMatrix,
    pub witness_word: BraidWord,
    pub fingerprint: Fingerprint,
}

/// Outcome of a bounded equivalence search. `Inconclusive` means the budget
/// ran out or the bounded components are disjoint; it is never a claim of
/// inequivalence.
#[derive(Debug, Clone)]
pub enum Equivalence {
    Witness(BraidWord),
    DistinguishedByInvariant,
    Inconclusive,
}

// ---------------------------------------------------------------------------
// Compact state representation: strict upper triangle in machine integers.

fn upper_len(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Index of entry (i, j), i < j, in the row-major strict upper triangle.
fn upidx(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (n - 1) - (i * i - i) / 2 + (j - i - 1)
}

fn state_of(m: &GramMatrix) -> Result<Vec<i64>, ClassifyError> {
    let n = m.n();
    let mut upper = Vec::with_capacity(upper_len(n));
    for i in 0..n {
        for j in i + 1..n {
            let v = i64::try_from(m.at(i, j)).map_err(|_| ClassifyError::EntriesTooLarge)?;
            upper.push(v);
        }
    }
    Ok(upper)
}

fn gram_of(n: usize, upper: &[i64]) -> GramMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 1;
        for (j, item) in row.iter_mut().enumerate().skip(i + 1) {
            *item = upper[upidx(n, i, j)];
        }
    }
    GramMatrix::from_rows(&rows).expect("state is unit upper-triangular by construction")
}

/// Apply one signed braid generator to a state. Same base change as
/// `mutation::apply_generator`, specialized to the compact representation;
/// the two implementations are cross-checked in the tests.
fn apply_generator_state(n: usize, upper: &[i64], g: BraidGenerator) -> Vec<i64> {
    let mut out = upper.to_vec();
    let k = g.index - 1;
    match g.kind {
        GeneratorKind::Sigma => {
            let a = upper[upidx(n, k, k + 1)];
            out[upidx(n, k, k + 1)] = -a;
            for r in 0..k {
                let at_k = upper[upidx(n, r, k)];
                let at_k1 = upper[upidx(n, r, k + 1)];
                out[upidx(n, r, k)] = at_k1 - a * at_k;
                out[upidx(n, r, k + 1)] = at_k;
            }
            for c in k + 2..n {
                let at_k = upper[upidx(n, k, c)];
                let at_k1 = upper[upidx(n, k + 1, c)];
                out[upidx(n, k, c)] = at_k1 - a * at_k;
                out[upidx(n, k + 1, c)] = at_k;
            }
        }
        GeneratorKind::SigmaInverse => {
            let b = upper[upidx(n, k, k + 1)];
            out[upidx(n, k, k + 1)] = -b;
            for r in 0..k {
                let at_k = upper[upidx(n, r, k)];
                let at_k1 = upper[upidx(n, r, k + 1)];
                out[upidx(n, r, k)] = at_k1;
                out[upidx(n, r, k + 1)] = at_k - b * at_k1;
            }
            for c in k + 2..n {
                let at_k = upper[upidx(n, k, c)];
                let at_k1 = upper[upidx(n, k + 1, c)];
                out[upidx(n, k, c)] = at_k1;
                out[upidx(n, k + 1, c)] = at_k - b * at_k1;
            }
        }
        GeneratorKind::Epsilon => {
            for r in 0..k {
                out[upidx(n, r, k)] = -out[upidx(n, r, k)];
            }
            for c in k + 1..n {
                out[upidx(n, k, c)] = -out[upidx(n, k, c)];
            }
        }
    }
    out
}

fn all_generators(n: usize) -> Vec<BraidGenerator> {
    let mut gens = Vec::with_capacity(3 * n - 2);
    for i in 1..n {
        gens.push(BraidGenerator::sigma(i));
    }
    for i in 1..n {
        gens.push(BraidGenerator::sigma_inverse(i));
    }
    for i in 1..=n {
        gens.push(BraidGenerator::epsilon(i));
    }
    gens
}

// ---------------------------------------------------------------------------
// Orbit breadth-first search with hash-consed states.

#[derive(Clone, Copy)]
struct Node {
    parent: usize,
    gen: Option<BraidGenerator>,
    depth: usize,
}

struct Explorer {
    n: usize,
    cap: i64,
    max_states: usize,
    /// Depth bound for bidirectional searches; canonical exploration is
    /// depth-unbounded (the state budget already makes it finite).
    max_depth: Option<usize>,
    gens: Vec<BraidGenerator>,
    nodes: IndexMap<Box<[i64]>, Node>,
    queue: VecDeque<usize>,
    truncated: bool,
}

impl Explorer {
    /// The root state is always admitted, even when its own entries exceed
    /// the cap; the cap prunes only newly generated states.
    fn new(n: usize, root: Vec<i64>, params: &SearchParams, max_depth: Option<usize>) -> Self {
        let mut nodes = IndexMap::new();
        nodes.insert(
            root.into_boxed_slice(),
            Node {
                parent: usize::MAX,
                gen: None,
                depth: 0,
            },
        );
        let mut queue = VecDeque::new();
        queue.push_back(0);
        Explorer {
            n,
            cap: params.entry_cap_orbit,
            max_states: params.max_orbit_size,
            max_depth,
            gens: all_generators(n),
            nodes,
            queue,
            truncated: false,
        }
    }

    fn has_work(&self) -> bool {
        !self.queue.is_empty()
    }

    fn index_of(&self, key: &[i64]) -> Option<usize> {
        self.nodes.get_index_of(key)
    }

    fn key_at(&self, idx: usize) -> &[i64] {
        self.nodes.get_index(idx).expect("valid node index").0
    }

    /// Expand one queued state; returns the indices of newly visited
    /// states, or None when the queue is empty.
    fn expand_one(&mut self) -> Option<Vec<usize>> {
        let idx = self.queue.pop_front()?;
        let node = *self.nodes.get_index(idx).expect("queued node exists").1;
        if self.max_depth.is_some_and(|cap| node.depth >= cap) {
            return Some(Vec::new());
        }
        let key: Vec<i64> = self.key_at(idx).to_vec();
        let mut fresh = Vec::new();
        for &g in &self.gens.clone() {
            let child = apply_generator_state(self.n, &key, g);
            if child.iter().any(|&v| v.abs() > self.cap) {
                continue;
            }
            if self.nodes.contains_key(child.as_slice()) {
                continue;
            }
            // this child is genuinely new: refusing it loses states
            if self.nodes.len() >= self.max_states {
                self.truncated = true;
                continue;
            }
            let (child_idx, _) = self.nodes.insert_full(
                child.into_boxed_slice(),
                Node {
                    parent: idx,
                    gen: Some(g),
                    depth: node.depth + 1,
                },
            );
            self.queue.push_back(child_idx);
            fresh.push(child_idx);
        }
        Some(fresh)
    }

    fn run_to_completion(&mut self) {
        while self.expand_one().is_some() {}
    }

    /// Word sending the root state to the state at `idx` (replayable with
    /// `apply_word` on the root matrix).
    fn word_to(&self, idx: usize) -> BraidWord {
        let mut generators = Vec::new();
        let mut cur = idx;
        loop {
            let node = self.nodes.get_index(cur).expect("valid node index").1;
            match node.gen {
                Some(g) => generators.push(g),
                None => break,
            }
            cur = node.parent;
        }
        // collected last-applied first, which is exactly textual order
        BraidWord::new(self.n, generators).expect("path generators are valid")
    }

    /// Index of the minimal visited state under (max |entry|, lexicographic)
    /// ordering.
    fn minimal_state(&self) -> usize {
        let mut best = 0usize;
        for idx in 1..self.nodes.len() {
            if state_cmp(self.key_at(idx), self.key_at(best)) == std::cmp::Ordering::Less {
                best = idx;
            }
        }
        best
    }
}

fn state_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let max_a = a.iter().map(|v| v.abs()).max().unwrap_or(0);
    let max_b = b.iter().map(|v| v.abs()).max().unwrap_or(0);
    max_a.cmp(&max_b).then_with(|| a.cmp(b))
}

// ---------------------------------------------------------------------------
// Public operations.

/// Canonicalize a matrix within its bounded orbit: explore breadth-first
/// under all signed braid generators, prune states beyond the entry cap,
/// and return the minimal visited state together with a witness word.
///
/// When the exploration is truncated by a budget the result is a
/// `BudgetExhausted` error carrying the best certificate found so far;
/// certificates from completed searches are canonical for the whole capped
/// component, so canonicalization is idempotent on them.
pub fn canonical_form(
    m: &GramMatrix,
    params: &SearchParams,
) -> Result<OrbitCertificate, ClassifyError> {
    params.validate()?;
    let root = state_of(m)?;
    let mut explorer = Explorer::new(m.n(), root, params, None);
    explorer.run_to_completion();
    let best = explorer.minimal_state();
    let witness_word = explorer.word_to(best);
    let representative = gram_of(m.n(), explorer.key_at(best));
    debug_assert_eq!(
        apply_word(m, &witness_word).expect("witness word has the matrix rank"),
        representative
    );
    let certificate = OrbitCertificate {
        representative,
        witness_word,
        fingerprint: fingerprint(m),
    };
    if explorer.truncated {
        Err(ClassifyError::BudgetExhausted {
            visited: explorer.nodes.len(),
            best: Box::new(certificate),
        })
    } else {
        Ok(certificate)
    }
}

/// Decide whether two matrices lie in the same signed braid orbit, within
/// the given budgets. Invariant mismatch certifies inequivalence; a meeting
/// point of the two bidirectional searches yields a replayable witness;
/// everything else is inconclusive (bounded search cannot prove
/// inequivalence).
pub fn equivalent(
    m1: &GramMatrix,
    m2: &GramMatrix,
    params: &SearchParams,
) -> Result<Equivalence, ClassifyError> {
    params.validate()?;
    if m1.n() != m2.n() {
        return Err(ClassifyError::RankMismatch {
            left: m1.n(),
            right: m2.n(),
        });
    }
    if m1 == m2 {
        return Ok(Equivalence::Witness(BraidWord::empty(m1.n())));
    }
    if fingerprint(m1) != fingerprint(m2) {
        return Ok(Equivalence::DistinguishedByInvariant);
    }
    let mut side_a = Explorer::new(m1.n(), state_of(m1)?, params, Some(params.max_word_length));
    let mut side_b = Explorer::new(m2.n(), state_of(m2)?, params, Some(params.max_word_length));
    loop {
        let a_can = side_a.has_work();
        let b_can = side_b.has_work();
        if !a_can && !b_can {
            return Ok(Equivalence::Inconclusive);
        }
        // balance the two frontiers by visited-state count
        let expand_a = a_can && (!b_can || side_a.nodes.len() <= side_b.nodes.len());
        let (active, passive) = if expand_a {
            (&mut side_a, &side_b)
        } else {
            (&mut side_b, &side_a)
        };
        let fresh = active.expand_one().unwrap_or_default();
        let mut meet = None;
        for idx in fresh {
            if let Some(other_idx) = passive.index_of(active.key_at(idx)) {
                meet = Some((idx, other_idx));
                break;
            }
        }
        if let Some((active_idx, passive_idx)) = meet {
            let (word_from_1, word_from_2) = if expand_a {
                (side_a.word_to(active_idx), side_b.word_to(passive_idx))
            } else {
                (side_a.word_to(passive_idx), side_b.word_to(active_idx))
            };
            // m1 --w1--> meet --w2^-1--> m2
            let witness = word_from_2.inverse().then_after(&word_from_1);
            let replay = apply_word(m1, &witness).expect("witness word has the matrix rank");
            assert_eq!(replay, *m2, "equivalence witness failed to replay");
            return Ok(Equivalence::Witness(witness));
        }
    }
}

/// All unit upper-triangular matrices with |entries| <= bound that pass the
/// surface-type check, in lexicographic order of their strict upper
/// triangle.
///
/// The search space is cut down by a necessary condition: unipotency of s
/// forces tr(s) = n, and the trace is a quadratic polynomial in the last
/// entry, so for each choice of the remaining entries only the (at most
/// two) integer roots survive to the full exact check.
pub fn enumerate_solutions(n: usize, bound: i64, required_rank: usize) -> Vec<GramMatrix> {
    assert!(n >= 2, "enumeration needs rank at least 2");
    assert!(bound >= 0, "bound must be nonnegative");
    let k = upper_len(n);
    let mut solutions = Vec::new();
    let mut prefix = vec![-bound; k - 1];
    let mut entries = vec![0i64; k];
    loop {
        entries[..k - 1].copy_from_slice(&prefix);
        for x in last_entry_candidates(n, &mut entries, bound) {
            entries[k - 1] = x;
            let passes = match fast_surface_check(n, &entries, required_rank) {
                Some(p) => p,
                None => {
                    gram_of(n, &entries)
                        .check_surface_type(required_rank)
                        .passes_surface_type
                }
            };
            if passes {
                solutions.push(gram_of(n, &entries));
            }
        }
        // odometer over the prefix, most significant digit first
        let mut pos = k - 1;
        loop {
            if pos == 0 {
                return solutions;
            }
            pos -= 1;
            if prefix[pos] < bound {
                prefix[pos] += 1;
                break;
            }
            prefix[pos] = -bound;
        }
    }
}

/// Values of the last strict-upper entry that can possibly give a
/// surface-type matrix: unipotency of s forces tr(s) = n, and the trace is
/// a quadratic polynomial in that entry, recovered here by interpolation.
/// If the trace computation overflows, the filter is skipped (never
/// guessed) and the whole range is handed to the exact check.
fn last_entry_candidates(n: usize, entries: &mut [i64], bound: i64) -> Vec<i64> {
    let k = entries.len();
    let mut t = [0i128; 3];
    for (x, slot) in t.iter_mut().enumerate() {
        entries[k - 1] = x as i64;
        match serre_trace(n, entries) {
            Some(v) => *slot = v,
            None => return (-bound..=bound).collect(),
        }
    }
    let alpha2 = t[2] - 2 * t[1] + t[0]; // 2 * leading coefficient
    debug_assert_eq!(alpha2 % 2, 0);
    let alpha = alpha2 / 2;
    let gamma = t[0] - n as i128;
    let beta = t[1] - t[0] - alpha;
    integer_roots(alpha, beta, gamma, bound)
}

/// Overflow-checked machine-integer version of the surface-type check for
/// enumeration candidates: exact as long as nothing overflows, `None` when
/// something does (the caller then falls back to arbitrary precision).
/// Nondegeneracy holds by construction: a unit upper-triangular matrix has
/// determinant 1.
fn fast_surface_check(n: usize, upper: &[i64], required_rank: usize) -> Option<bool> {
    let mut m = vec![0i128; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
        for j in i + 1..n {
            m[i * n + j] = upper[upidx(n, i, j)] as i128;
        }
    }
    let mul = |a: &[i128], b: &[i128]| -> Option<Vec<i128>> {
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let v = a[i * n + k];
                if v == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j].checked_add(v.checked_mul(b[k * n + j])?)?;
                }
            }
        }
        Some(out)
    };
    let mut identity = vec![0i128; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    // M^-1 as the finite geometric series in (id - M)
    let neg_nil: Vec<i128> = identity
        .iter()
        .zip(&m)
        .map(|(e, v)| e - v)
        .collect();
    let mut inverse = identity.clone();
    let mut power = identity.clone();
    for _ in 1..n {
        power = mul(&power, &neg_nil)?;
        for (acc, v) in inverse.iter_mut().zip(&power) {
            *acc = acc.checked_add(*v)?;
        }
    }
    // s = M^-1 M^t, then N = s - id
    let mut nil = vec![0i128; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc: i128 = 0;
            for k in 0..n {
                acc = acc.checked_add(inverse[i * n + k].checked_mul(m[j * n + k])?)?;
            }
            nil[i * n + j] = acc;
        }
        nil[i * n + i] = nil[i * n + i].checked_sub(1)?;
    }
    // unipotency: N^n = 0
    let mut power = nil.clone();
    for _ in 1..n {
        if power.iter().all(|&v| v == 0) {
            break;
        }
        power = mul(&power, &nil)?;
    }
    let unipotent = power.iter().all(|&v| v == 0);
    if !unipotent {
        return Some(false);
    }
    let rank = bareiss_rank_i128(n, nil)?;
    Some(rank == required_rank)
}

/// Fraction-free elimination in checked machine arithmetic; every division
/// is exact.
fn bareiss_rank_i128(n: usize, mut a: Vec<i128>) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let pivot = match (row..n).find(|&r| a[r * n + col] != 0) {
            Some(r) => r,
            None => continue,
        };
        if pivot != row {
            for c in 0..n {
                a.swap(row * n + c, pivot * n + c);
            }
        }
        for r in row + 1..n {
            for c in col + 1..n {
                let lhs = a[r * n + c].checked_mul(a[row * n + col])?;
                let rhs = a[r * n + col].checked_mul(a[row * n + c])?;
                let v = lhs.checked_sub(rhs)?;
                debug_assert_eq!(v % prev, 0);
                a[r * n + c] = v / prev;
            }
            a[r * n + col] = 0;
        }
        prev = a[row * n + col];
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    Some(rank)
}

/// tr(M^-1 M^t) for the unit upper-triangular matrix with the given strict
/// upper triangle, or None on machine overflow. M^-1 = sum of powers of
/// -(M - id), which terminates because M - id is nilpotent; the trace is
/// the entrywise product of M^-1 and M since both are upper triangular.
fn serre_trace(n: usize, upper: &[i64]) -> Option<i128> {
    let mut m = vec![0i128; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
        for j in i + 1..n {
            m[i * n + j] = upper[upidx(n, i, j)] as i128;
        }
    }
    let mut inv = vec![0i128; n * n]; // accumulates sum of (-N)^k
    let mut power = vec![0i128; n * n]; // current (-N)^k
    for i in 0..n {
        inv[i * n + i] = 1;
        power[i * n + i] = 1;
    }
    for _ in 1..n {
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in i + 1..n {
                let p = power[i * n + l];
                if p == 0 {
                    continue;
                }
                for j in l + 1..n {
                    let idx = i * n + j;
                    next[idx] = next[idx].checked_sub(p.checked_mul(m[l * n + j])?)?;
                }
            }
        }
        for (acc, v) in inv.iter_mut().zip(&next) {
            *acc = acc.checked_add(*v)?;
        }
        power = next;
    }
    let mut trace = 0i128;
    for i in 0..n {
        for j in i..n {
            trace = trace.checked_add(inv[i * n + j].checked_mul(m[i * n + j])?)?;
        }
    }
    Some(trace)
}

/// Integer roots of alpha x^2 + beta x + gamma = 0 within [-bound, bound],
/// ascending. The degenerate all-roots case returns the whole range.
fn integer_roots(alpha: i128, beta: i128, gamma: i128, bound: i64) -> Vec<i64> {
    let in_range = |x: i128| -> Option<i64> {
        let b = bound as i128;
        (-b..=b).contains(&x).then_some(x as i64)
    };
    if alpha == 0 {
        if beta == 0 {
            if gamma == 0 {
                return (-bound..=bound).collect();
            }
            return Vec::new();
        }
        if gamma % beta == 0 {
            return in_range(-gamma / beta).into_iter().collect();
        }
        return Vec::new();
    }
    let disc = beta * beta - 4 * alpha * gamma;
    if disc < 0 {
        return Vec::new();
    }
    let sqrt = (disc as u128).isqrt() as i128;
    if sqrt * sqrt != disc {
        return Vec::new();
    }
    let mut roots: Vec<i64> = [-beta + sqrt, -beta - sqrt]
        .into_iter()
        .filter(|num| num % (2 * alpha) == 0)
        .filter_map(|num| in_range(num / (2 * alpha)))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

// ---------------------------------------------------------------------------
// Rank-4 classification report.

/// Which known orbit a solution was connected to.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// In the orbit of the plane matrix (rank 3); the witness sends the
    /// solution to it.
    ConnectedToPlane { witness: BraidWord },
    /// In the orbit of the quadric-surface matrix; the witness sends the
    /// solution to it.
    ConnectedToQuadric { witness: BraidWord },
    /// In the orbit of the family member B_m; the witness sends the
    /// solution to it.
    ConnectedToFamily { m: usize, witness: BraidWord },
    /// Not reached by any bounded target search. Reported, never
    /// suppressed: bounded search cannot prove inequivalence.
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TargetId {
    Plane,
    Quadric,
    Family(usize),
}

#[derive(Debug, Clone)]
pub struct SolutionRecord {
    pub matrix: GramMatrix,
    pub fingerprint: Fingerprint,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ClassifyReport {
    pub n: usize,
    pub bound: i64,
    /// Largest family index m tried as a connection target.
    pub family_cap: usize,
    pub records: Vec<SolutionRecord>,
}

impl ClassifyReport {
    pub fn unresolved_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Unresolved))
            .count()
    }
}

/// Enumerate every rank-4 solution with |entries| <= bound, bucket by
/// invariant fingerprint, and connect each solution to the quadric matrix
/// or to a family member B_m by orbit search.
///
/// Each target orbit is explored once (breadth-first from the target) and
/// every solution encountered along the way receives the inverted path
/// word as its witness, so witness words always replay exactly. The family
/// index cap is derived from the bound: an orbit whose minimal entries
/// already exceed twice the bound cannot contain a solution this small.
pub fn classify_rank4(bound: i64, params: &SearchParams) -> ClassifyReport {
    let family_cap = (2 * bound.max(0)) as usize;
    let mut targets: Vec<(TargetId, GramMatrix)> = vec![(TargetId::Quadric, gram_quadric())];
    for m in 0..=family_cap {
        targets.push((TargetId::Family(m), gram_family(m)));
    }
    connect_to_targets(4, bound, family_cap, targets, params)
}

/// Rank-3 counterpart: every bounded solution is expected to land in the
/// single plane orbit.
pub fn classify_rank3(bound: i64, params: &SearchParams) -> ClassifyReport {
    let targets = vec![(TargetId::Plane, gram_p2())];
    connect_to_targets(3, bound, 0, targets, params)
}

fn connect_to_targets(
    n: usize,
    bound: i64,
    family_cap: usize,
    targets: Vec<(TargetId, GramMatrix)>,
    params: &SearchParams,
) -> ClassifyReport {
    params.validate().expect("invalid search parameters");
    let solutions = enumerate_solutions(n, bound, SURFACE_RANK);
    let fingerprints: Vec<Fingerprint> = solutions.iter().map(fingerprint).collect();

    let mut pending: IndexMap<Box<[i64]>, usize> = IndexMap::new();
    for (idx, sol) in solutions.iter().enumerate() {
        let key = state_of(sol)
            .expect("enumerated entries fit the state representation")
            .into_boxed_slice();
        pending.insert(key, idx);
    }
    let mut verdicts: Vec<Option<Verdict>> = vec![None; solutions.len()];

    for (target, matrix) in targets {
        if pending.is_empty() {
            break;
        }
        let target_fp = fingerprint(&matrix);
        if !pending.values().any(|&idx| fingerprints[idx] == target_fp) {
            continue;
        }
        let root = state_of(&matrix).expect("target entries fit the state representation");
        let mut explorer = Explorer::new(n, root, params, None);
        let resolve = |explorer: &Explorer,
                       state_idx: usize,
                       pending: &mut IndexMap<Box<[i64]>, usize>,
                       verdicts: &mut Vec<Option<Verdict>>| {
            if let Some(sol_idx) = pending.shift_remove(explorer.key_at(state_idx)) {
                // path word maps target -> solution; invert it
                let witness = explorer.word_to(state_idx).inverse();
                debug_assert_eq!(
                    apply_word(&solutions[sol_idx], &witness).expect("rank matches"),
                    matrix
                );
                let verdict = match target {
                    TargetId::Plane => Verdict::ConnectedToPlane { witness },
                    TargetId::Quadric => Verdict::ConnectedToQuadric { witness },
                    TargetId::Family(m) => Verdict::ConnectedToFamily { m, witness },
                };
                verdicts[sol_idx] = Some(verdict);
            }
        };
        resolve(&explorer, 0, &mut pending, &mut verdicts);
        while let Some(fresh) = explorer.expand_one() {
            for idx in fresh {
                resolve(&explorer, idx, &mut pending, &mut verdicts);
            }
            if pending.is_empty() {
                break;
            }
        }
    }

    let records = solutions
        .into_iter()
        .zip(fingerprints)
        .zip(verdicts)
        .map(|((matrix, fingerprint), verdict)| SolutionRecord {
            matrix,
            fingerprint,
            verdict: verdict.unwrap_or(Verdict::Unresolved),
        })
        .collect();
    ClassifyReport {
        n,
        bound,
        family_cap,
        records,
    }
}

impl std::fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "rank-{} classification, |entries| <= {}, family targets up to m = {}",
            self.n, self.bound, self.family_cap
        )?;
        writeln!(
            f,
            "{} solutions, {} unresolved",
            self.records.len(),
            self.unresolved_count()
        )?;
        for (i, record) in self.records.iter().enumerate() {
            let upper: Vec<String> = (0..self.n)
                .flat_map(|r| (r + 1..self.n).map(move |c| (r, c)))
                .map(|(r, c)| record.matrix.at(r, c).to_string())
                .collect();
            let verdict = match &record.verdict {
                Verdict::ConnectedToPlane { witness } => {
                    format!("plane orbit, witness \"{witness}\"")
                }
                Verdict::ConnectedToQuadric { witness } => {
                    format!("quadric orbit, witness \"{witness}\"")
                }
                Verdict::ConnectedToFamily { m, witness } => {
                    format!("family orbit m = {m}, witness \"{witness}\"")
                }
                Verdict::Unresolved => "unresolved".to_string(),
            };
            writeln!(f, "#{:<4} upper [{}]: {}", i + 1, upper.join(", "), verdict)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::apply_generator;
    use crate::ncalgebra::{gram_family_blowup, gram_p2};

    fn small_params() -> SearchParams {
        SearchParams {
            entry_bound_enumeration: 4,
            entry_cap_orbit: 60,
            max_orbit_size: 200_000,
            max_word_length: 30,
        }
    }

    #[test]
    fn state_roundtrip() {
        let m = gram_quadric();
        let s = state_of(&m).unwrap();
        assert_eq!(s, vec![2, 2, 4, 0, 2, 2]);
        assert_eq!(gram_of(4, &s), m);
    }

    #[test]
    fn state_action_matches_exact_action() {
        // cross-check the i64 fast path against the arbitrary-precision one
        let m = GramMatrix::from_rows(&[
            vec![1, 2, -3, 5],
            vec![0, 1, 4, -1],
            vec![0, 0, 1, 7],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        let upper = state_of(&m).unwrap();
        for g in all_generators(4) {
            let exact = apply_generator(&m, g).unwrap();
            let fast = gram_of(4, &apply_generator_state(4, &upper, g));
            assert_eq!(exact, fast, "generator {g} diverged");
        }
    }

    #[test]
    fn enumeration_matches_brute_force_rank3() {
        // oracle: full brute force over all 7^3 candidates with the exact
        // axiom checker, no trace shortcut
        let bound = 3i64;
        let mut expected = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    let m = gram_of(3, &[a, b, c]);
                    if m.check_surface_type(SURFACE_RANK).passes_surface_type {
                        expected.push(m);
                    }
                }
            }
        }
        let got = enumerate_solutions(3, bound, SURFACE_RANK);
        assert_eq!(got, expected);
        assert!(got.contains(&GramMatrix::from_rows(&[
            vec![1, 3, 3],
            vec![0, 1, 3],
            vec![0, 0, 1]
        ])
        .unwrap()));
    }

    #[test]
    fn enumeration_bound_one_is_empty_rank3() {
        // oracle agrees: no surface-type solutions with entries in [-1, 1]
        for a in -1i64..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    let m = gram_of(3, &[a, b, c]);
                    assert!(!m.check_surface_type(SURFACE_RANK).passes_surface_type);
                }
            }
        }
        assert!(enumerate_solutions(3, 1, SURFACE_RANK).is_empty());
    }

    #[test]
    fn enumeration_contains_quadric_matrix() {
        let got = enumerate_solutions(4, 4, SURFACE_RANK);
        assert!(got.contains(&gram_quadric()));
    }

    #[test]
    fn enumeration_closed_under_sign_flips() {
        let bound = 3i64;
        let got = enumerate_solutions(3, bound, SURFACE_RANK);
        for m in &got {
            for i in 1..=3 {
                let flipped = apply_generator(m, BraidGenerator::epsilon(i)).unwrap();
                let within = state_of(&flipped)
                    .unwrap()
                    .iter()
                    .all(|v| v.abs() <= bound);
                assert!(within, "sign flip never changes absolute entries");
                assert!(got.contains(&flipped));
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let params = small_params();
        let cert = canonical_form(&gram_p2(), &params).unwrap();
        let again = canonical_form(&cert.representative, &params).unwrap();
        assert_eq!(cert.representative, again.representative);
        // witness replays
        assert_eq!(
            apply_word(&gram_p2(), &cert.witness_word).unwrap(),
            cert.representative
        );
    }

    #[test]
    fn canonical_form_respects_sign_moves() {
        let params = small_params();
        let a = gram_quadric();
        let flipped = apply_generator(&a, BraidGenerator::epsilon(2)).unwrap();
        let ca = canonical_form(&a, &params).unwrap();
        let cf = canonical_form(&flipped, &params).unwrap();
        assert_eq!(ca.representative, cf.representative);
    }

    #[test]
    fn canonical_form_connects_family_presentations() {
        let params = small_params();
        for m in 0..=4 {
            let c1 = canonical_form(&gram_family(m), &params).unwrap();
            let c2 = canonical_form(&gram_family_blowup(m), &params).unwrap();
            assert_eq!(c1.representative, c2.representative, "m = {m}");
        }
    }

    #[test]
    fn equivalent_finds_the_family_witness() {
        let params = small_params();
        let result = equivalent(&gram_family_blowup(5), &gram_family(5), &params).unwrap();
        match result {
            Equivalence::Witness(w) => {
                let replay = apply_word(&gram_family_blowup(5), &w).unwrap();
                assert_eq!(replay, gram_family(5));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn equivalence_witnesses_replay_in_both_orders() {
        // meets can occur while expanding either side; both index spaces
        // must be kept apart when assembling the witness
        let params = small_params();
        for m in 0..=6 {
            let pairs = [
                (gram_family_blowup(m), gram_family(m)),
                (gram_family(m), gram_family_blowup(m)),
            ];
            for (x, y) in pairs {
                match equivalent(&x, &y, &params).unwrap() {
                    Equivalence::Witness(w) => {
                        assert_eq!(apply_word(&x, &w).unwrap(), y, "m = {m}");
                    }
                    other => panic!("expected witness at m = {m}, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn equivalent_on_identical_matrices_is_empty_witness() {
        let params = small_params();
        match equivalent(&gram_p2(), &gram_p2(), &params).unwrap() {
            Equivalence::Witness(w) => assert!(w.is_empty()),
            other => panic!("expected empty witness, got {other:?}"),
        }
    }

    #[test]
    fn family_members_never_claimed_equivalent() {
        // different family members share invariants, so a bounded search may
        // only answer inconclusive, never produce a witness
        let params = SearchParams {
            entry_cap_orbit: 40,
            max_orbit_size: 30_000,
            ..small_params()
        };
        match equivalent(&gram_family(2), &gram_family(3), &params).unwrap() {
            Equivalence::Witness(w) => panic!("impossible witness {w}"),
            Equivalence::DistinguishedByInvariant | Equivalence::Inconclusive => {}
        }
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let params = small_params();
        assert!(matches!(
            equivalent(&gram_p2(), &gram_quadric(), &params),
            Err(ClassifyError::RankMismatch { .. })
        ));
    }

    #[test]
    fn classify_small_bound_resolves_everything() {
        let params = small_params();
        let report = classify_rank4(4, &params);
        assert!(!report.records.is_empty());
        assert!(report.records.iter().any(|r| r.matrix == gram_quadric()));
        for record in &report.records {
            match &record.verdict {
                Verdict::ConnectedToQuadric { witness } => {
                    assert_eq!(
                        apply_word(&record.matrix, witness).unwrap(),
                        gram_quadric()
                    );
                }
                Verdict::ConnectedToFamily { m, witness } => {
                    assert_eq!(apply_word(&record.matrix, witness).unwrap(), gram_family(*m));
                }
                other => panic!("unexpected verdict at bound 4: {other:?}"),
            }
        }
    }

    #[test]
    fn classify_rank3_connects_to_plane() {
        let params = small_params();
        let report = classify_rank3(3, &params);
        assert!(!report.records.is_empty());
        for record in &report.records {
            match &record.verdict {
                Verdict::ConnectedToPlane { witness } => {
                    assert_eq!(apply_word(&record.matrix, witness).unwrap(), gram_p2());
                }
                other => panic!("unexpected verdict: {other:?}"),
            }
        }
    }

    #[test]
    fn quadratic_root_finder() {
        assert_eq!(integer_roots(1, 0, -4, 10), vec![-2, 2]);
        assert_eq!(integer_roots(1, 0, 3, 10), Vec::<i64>::new());
        assert_eq!(integer_roots(0, 2, -4, 10), vec![2]);
        assert_eq!(integer_roots(0, 0, 0, 2), vec![-2, -1, 0, 1, 2]);
        assert_eq!(integer_roots(-1, 0, 9, 10), vec![-3, 3]);
    }

    #[test]
    fn trace_filter_agrees_with_serre_matrix() {
        let m = gram_family_blowup(3);
        let upper = state_of(&m).unwrap();
        let s = m.serre_matrix();
        let direct: i128 = (0..4)
            .map(|i| i128::try_from(s.at(i, i)).unwrap())
            .sum();
        assert_eq!(serre_trace(4, &upper), Some(direct));
    }

    #[test]
    fn fast_check_matches_exact_check() {
        // sweep every rank-3 state with small entries
        for a in -2i64..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let upper = [a, b, c];
                    let fast = fast_surface_check(3, &upper, SURFACE_RANK).unwrap();
                    let exact = gram_of(3, &upper)
                        .check_surface_type(SURFACE_RANK)
                        .passes_surface_type;
                    assert_eq!(fast, exact, "diverged at {upper:?}");
                }
            }
        }
    }
}
