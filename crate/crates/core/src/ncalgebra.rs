//! Quadratic graded-algebra presentations and their graded dimensions, the
//! fat-point multiplicity formula, and the named Gram-matrix builders.
//!
//! Graded dimensions are computed by exact linear algebra on the monomial
//! basis of the free algebra: dim A_d = g^d minus the rank of the span of
//! all products m_left · r · m_right with r a defining relation. No Groebner
//! machinery is involved; desk-scale degrees keep plain rank computations
//! cheap and convention-free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::eulerform::GramMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcAlgebraError {
    #[error("presentation needs at least one generator")]
    NoGenerators,
    #[error("relation {0} has no nonzero coefficient")]
    EmptyRelation(usize),
    #[error("relation {index} has {got} coefficients, expected {expected}")]
    WrongRelationSize {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("sklyanin parameters must not all be zero")]
    AllZeroParameters,
    #[error("degree {degree} with {generators} generators exceeds the resource budget")]
    ResourceBudget { degree: usize, generators: usize },
}

/// Presentation of a quadratic graded algebra: g generators in degree 1 and
/// a list of degree-2 relations, each stored as a g x g coefficient array
/// (entry (u, v) multiplies generator_u · generator_v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    num_generators: usize,
    relations: Vec<Vec<BigRational>>,
}

/// Free-monomial budget for graded-dimension computations.
const MONOMIAL_BUDGET: u128 = 250_000;

impl QuadraticPresentation {
    pub fn new(
        num_generators: usize,
        relations: Vec<Vec<BigRational>>,
    ) -> Result<Self, NcAlgebraError> {
        if num_generators == 0 {
            return Err(NcAlgebraError::NoGenerators);
        }
        let expected = num_generators * num_generators;
        for (index, r) in relations.iter().enumerate() {
            if r.len() != expected {
                return Err(NcAlgebraError::WrongRelationSize {
                    index: index + 1,
                    expected,
                    got: r.len(),
                });
            }
            if r.iter().all(|c| c.is_zero()) {
                return Err(NcAlgebraError::EmptyRelation(index + 1));
            }
        }
        Ok(QuadraticPresentation {
            num_generators,
            relations,
        })
    }

    /// The fully commutative presentation: relations x_u x_v - x_v x_u for
    /// all u < v.
    pub fn commutative(num_generators: usize) -> Result<Self, NcAlgebraError> {
        if num_generators == 0 {
            return Err(NcAlgebraError::NoGenerators);
        }
        let g = num_generators;
        let mut relations = Vec::new();
        for u in 0..g {
            for v in u + 1..g {
                let mut coeffs = vec![BigRational::zero(); g * g];
                coeffs[u * g + v] = BigRational::one();
                coeffs[v * g + u] = -BigRational::one();
                relations.push(coeffs);
            }
        }
        QuadraticPresentation::new(g, relations)
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &[Vec<BigRational>] {
        &self.relations
    }

    fn check_budget(&self, max_degree: usize) -> Result<(), NcAlgebraError> {
        let mut size: u128 = 1;
        for _ in 0..max_degree {
            size = size.saturating_mul(self.num_generators as u128);
            if size > MONOMIAL_BUDGET {
                return Err(NcAlgebraError::ResourceBudget {
                    degree: max_degree,
                    generators: self.num_generators,
                });
            }
        }
        Ok(())
    }

    /// Dimensions dim A_0 .. dim A_D of the graded quotient, computed over
    /// the rationals. This is the authoritative mode; the modular variant
    /// below is a screening pass only.
    pub fn graded_dims(&self, max_degree: usize) -> Result<Vec<usize>, NcAlgebraError> {
        self.check_budget(max_degree)?;
        let g = self.num_generators;
        let mut dims = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let free_dim = (g as u128).pow(d as u32) as usize;
            if d < 2 {
                dims.push(free_dim);
                continue;
            }
            let rank = rational_span_rank(free_dim, self.ideal_rows(d));
            dims.push(free_dim - rank);
        }
        Ok(dims)
    }

    /// Same computation with coefficients reduced modulo a large prime.
    /// Modular rank can only drop, so the reported dimensions can only
    /// overcount; use this as a fast screen and confirm rationally.
    pub fn graded_dims_modular(&self, max_degree: usize) -> Result<Vec<usize>, NcAlgebraError> {
        self.check_budget(max_degree)?;
        let g = self.num_generators;
        let modular_relations: Vec<Vec<u64>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(rational_mod_p).collect())
            .collect();
        let mut dims = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let free_dim = (g as u128).pow(d as u32) as usize;
            if d < 2 {
                dims.push(free_dim);
                continue;
            }
            let rows = ideal_row_indices(g, modular_relations.len(), d).map(
                |(left, rel_idx, right, right_len)| {
                    let mut row = vec![0u64; free_dim];
                    let rel = &modular_relations[rel_idx];
                    let tail = (g as u64).pow(right_len as u32) as usize;
                    for u in 0..g {
                        for v in 0..g {
                            let c = rel[u * g + v];
                            if c != 0 {
                                let col = (((left * g + u) * g + v) * tail) + right;
                                row[col] = mod_add(row[col], c);
                            }
                        }
                    }
                    row
                },
            );
            let rank = modular_span_rank(free_dim, rows);
            dims.push(free_dim - rank);
        }
        Ok(dims)
    }

    fn ideal_rows(&self, d: usize) -> impl Iterator<Item = Vec<BigRational>> + '_ {
        let g = self.num_generators;
        let free_dim = (g as u128).pow(d as u32) as usize;
        ideal_row_indices(g, self.relations.len(), d).map(
            move |(left, rel_idx, right, right_len)| {
                let mut row = vec![BigRational::zero(); free_dim];
                let rel = &self.relations[rel_idx];
                let tail = (g as u64).pow(right_len as u32) as usize;
                for u in 0..g {
                    for v in 0..g {
                        let c = &rel[u * g + v];
                        if !c.is_zero() {
                            let col = (((left * g + u) * g + v) * tail) + right;
                            row[col] += c;
                        }
                    }
                }
                row
            },
        )
    }
}

/// Enumerate the index data of every spanning product m_left · r · m_right
/// in degree d: (left monomial index, relation index, right monomial index,
/// right length).
fn ideal_row_indices(
    g: usize,
    num_relations: usize,
    d: usize,
) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..=d.saturating_sub(2)).flat_map(move |left_len| {
        let right_len = d - 2 - left_len;
        let lefts = (g as u64).pow(left_len as u32) as usize;
        let rights = (g as u64).pow(right_len as u32) as usize;
        (0..lefts).flat_map(move |left| {
            (0..num_relations).flat_map(move |rel_idx| {
                (0..rights).map(move |right| (left, rel_idx, right, right_len))
            })
        })
    })
}

/// Exact rank of a spanned subspace via incremental echelon reduction over
/// the rationals.
fn rational_span_rank(
    width: usize,
    rows: impl Iterator<Item = Vec<BigRational>>,
) -> usize {
    // pivot column -> normalized row with leading 1 at that column
    let mut pivots: Vec<Option<Vec<BigRational>>> = vec![None; width];
    let mut rank = 0;
    for mut row in rows {
        let mut col = 0;
        while col < width {
            if row[col].is_zero() {
                col += 1;
                continue;
            }
            match &pivots[col] {
                Some(pivot_row) => {
                    let factor = row[col].clone();
                    for c in col..width {
                        if !pivot_row[c].is_zero() {
                            let v = &row[c] - &factor * &pivot_row[c];
                            row[c] = v;
                        }
                    }
                    col += 1;
                }
                None => {
                    let lead = row[col].clone();
                    for c in col..width {
                        if !row[c].is_zero() {
                            let v = &row[c] / &lead;
                            row[c] = v;
                        }
                    }
                    pivots[col] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

// Prime modulus for the screening mode: 2^61 - 1.
const SCREEN_PRIME: u64 = 2_305_843_009_213_693_951;

fn mod_add(a: u64, b: u64) -> u64 {
    let s = (a as u128 + b as u128) % (SCREEN_PRIME as u128);
    s as u64
}

fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % (SCREEN_PRIME as u128)) as u64
}

fn mod_sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + SCREEN_PRIME - b
    }
}

fn mod_pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base);
        }
        base = mod_mul(base, base);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64) -> u64 {
    mod_pow(a, SCREEN_PRIME - 2)
}

fn rational_mod_p(value: &BigRational) -> u64 {
    let p = BigInt::from(SCREEN_PRIME);
    let numer = value.numer().mod_floor(&p);
    let denom = value.denom().mod_floor(&p);
    let numer: u64 = numer.try_into().expect("reduced residue fits u64");
    let denom: u64 = denom.try_into().expect("reduced residue fits u64");
    assert!(denom != 0, "denominator divisible by the screening prime");
    mod_mul(numer, mod_inv(denom))
}

fn modular_span_rank(width: usize, rows: impl Iterator<Item = Vec<u64>>) -> usize {
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; width];
    let mut rank = 0;
    for mut row in rows {
        let mut col = 0;
        while col < width {
            if row[col] == 0 {
                col += 1;
                continue;
            }
            match &pivots[col] {
                Some(pivot_row) => {
                    let factor = row[col];
                    for c in col..width {
                        if pivot_row[c] != 0 {
                            row[c] = mod_sub(row[c], mod_mul(factor, pivot_row[c]));
                        }
                    }
                    col += 1;
                }
                None => {
                    let inv = mod_inv(row[col]);
                    for c in col..width {
                        row[c] = mod_mul(row[c], inv);
                    }
                    pivots[col] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// The three cyclic quadratic relations a·xy + b·yx + c·z² (and its two
/// cyclic shifts) on three generators.
pub fn sklyanin(
    a: BigRational,
    b: BigRational,
    c: BigRational,
) -> Result<QuadraticPresentation, NcAlgebraError> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(NcAlgebraError::AllZeroParameters);
    }
    let g = 3usize;
    let mut relations = Vec::with_capacity(3);
    // generator order (x, y, z) = (0, 1, 2); each relation is
    // a · x_u x_v + b · x_v x_u + c · x_w² for the cyclic triples
    for (u, v, w) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let mut coeffs = vec![BigRational::zero(); g * g];
        coeffs[u * g + v] += &a;
        coeffs[v * g + u] += &b;
        coeffs[w * g + w] += &c;
        relations.push(coeffs);
    }
    QuadraticPresentation::new(g, relations)
}

/// Convenience form with integer parameters.
pub fn sklyanin_int(a: i64, b: i64, c: i64) -> Result<QuadraticPresentation, NcAlgebraError> {
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    sklyanin(r(a), r(b), r(c))
}

/// Data of a fat point: only the order of the automorphism in the
/// underlying elliptic triple enters the multiplicity formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FatPointSpec {
    pub automorphism_order: usize,
}

impl FatPointSpec {
    pub fn new(automorphism_order: usize) -> Option<Self> {
        (automorphism_order >= 1).then_some(FatPointSpec { automorphism_order })
    }
}

/// Multiplicity of the fat point modules: n when gcd(n, 3) = 1, n/3 when
/// 3 divides n.
pub fn fat_point_multiplicity(spec: FatPointSpec) -> usize {
    let n = spec.automorphism_order;
    if n % 3 == 0 {
        n / 3
    } else {
        n
    }
}

fn gram(rows: &[Vec<i64>]) -> GramMatrix {
    GramMatrix::from_rows(rows).expect("builder rows are unit upper-triangular")
}

/// Gram matrix of the standard three-term exceptional collection on the
/// projective plane.
pub fn gram_p2() -> GramMatrix {
    gram(&[vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]])
}

/// Gram matrix of the quadric-surface solution of the rank-4
/// classification.
pub fn gram_quadric() -> GramMatrix {
    gram(&[
        vec![1, 2, 2, 4],
        vec![0, 1, 0, 2],
        vec![0, 0, 1, 2],
        vec![0, 0, 0, 1],
    ])
}

/// The rank-4 family member B_m.
pub fn gram_family(m: usize) -> GramMatrix {
    let m = i64::try_from(m).expect("family parameter fits i64");
    gram(&[
        vec![1, m, 2 * m, m],
        vec![0, 1, 3, 3],
        vec![0, 0, 1, 3],
        vec![0, 0, 0, 1],
    ])
}

/// The mutation-equivalent representative B'_m of the family, the form of
/// a blowup collection (three plane bundles and an exceptional object).
pub fn gram_family_blowup(m: usize) -> GramMatrix {
    let m = i64::try_from(m).expect("family parameter fits i64");
    gram(&[
        vec![1, 3, 6, m],
        vec![0, 1, 3, m],
        vec![0, 0, 1, m],
        vec![0, 0, 0, 1],
    ])
}

/// Build the 4x4 Gram matrix of the collection (S_0, S_1, S_2, F) from
/// first principles: the pairings among the S_i are the graded dimensions
/// dim A_1, dim A_2 of a quadratic three-generator algebra with the
/// polynomial Hilbert series, and every pairing into the fat point F is its
/// multiplicity s.
pub fn extended_gram(s: usize) -> GramMatrix {
    assert!(s >= 1, "fat point multiplicity must be at least 1");
    let presentation = sklyanin_int(1, 2, 3).expect("nonzero parameters");
    let dims = presentation
        .graded_dims(2)
        .expect("degree 2 with 3 generators is within budget");
    let s_i64 = i64::try_from(s).expect("multiplicity fits i64");
    let dim = |k: usize| i64::try_from(dims[k]).expect("graded dimension fits i64");
    let mut rows = vec![vec![0i64; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate().take(3) {
        for (j, item) in row.iter_mut().enumerate().take(3) {
            if j >= i {
                *item = dim(j - i);
            }
        }
        row[3] = s_i64;
    }
    rows[3][3] = 1;
    let result = gram(&rows);
    assert_eq!(
        result,
        gram_family_blowup(s),
        "extended Gram matrix must agree with the blowup family"
    );
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutative_dims_are_binomials() {
        let p = QuadraticPresentation::commutative(3).unwrap();
        assert_eq!(p.graded_dims(5).unwrap(), vec![1, 3, 6, 10, 15, 21]);
    }

    #[test]
    fn sklyanin_generic_has_polynomial_dims() {
        let p = sklyanin_int(1, 2, 3).unwrap();
        assert_eq!(p.graded_dims(4).unwrap(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn modular_screen_agrees_on_generic_member() {
        let p = sklyanin_int(1, 2, 3).unwrap();
        assert_eq!(p.graded_dims(4).unwrap(), p.graded_dims_modular(4).unwrap());
    }

    #[test]
    fn single_generator_square_zero() {
        let p = QuadraticPresentation::new(
            1,
            vec![vec![BigRational::one()]],
        )
        .unwrap();
        assert_eq!(p.graded_dims(3).unwrap(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn degenerate_axis_members() {
        // (1,1,0): anticommuting flavor, still 1, 3, 6 through degree 2
        let p = sklyanin_int(1, 1, 0).unwrap();
        assert_eq!(p.graded_dims(2).unwrap(), vec![1, 3, 6]);

        // (0,0,1): relations x², y², z². Degree-3 monomials that survive are
        // exactly the words with no equal adjacent letters: 3·2·2 = 12, an
        // independent combinatorial count.
        let p = sklyanin_int(0, 0, 1).unwrap();
        assert_eq!(p.graded_dims(3).unwrap(), vec![1, 3, 6, 12]);
    }

    #[test]
    fn sklyanin_rejects_all_zero() {
        assert_eq!(
            sklyanin_int(0, 0, 0).unwrap_err(),
            NcAlgebraError::AllZeroParameters
        );
    }

    #[test]
    fn budget_guard_trips() {
        let p = QuadraticPresentation::commutative(3).unwrap();
        assert!(matches!(
            p.graded_dims(40),
            Err(NcAlgebraError::ResourceBudget { .. })
        ));
    }

    #[test]
    fn fat_multiplicity_table() {
        let expected = [1, 2, 1, 4, 5, 2, 7, 8, 3, 10, 11, 4];
        for (n, want) in (1..=12).zip(expected) {
            let spec = FatPointSpec::new(n).unwrap();
            assert_eq!(fat_point_multiplicity(spec), want, "n = {n}");
        }
    }

    #[test]
    fn named_matrices_match_printed_forms() {
        assert_eq!(
            gram_p2(),
            GramMatrix::from_rows(&[vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]).unwrap()
        );
        assert_eq!(
            gram_quadric(),
            GramMatrix::from_rows(&[
                vec![1, 2, 2, 4],
                vec![0, 1, 0, 2],
                vec![0, 0, 1, 2],
                vec![0, 0, 0, 1],
            ])
            .unwrap()
        );
        assert_eq!(
            gram_family_blowup(0),
            GramMatrix::from_rows(&[
                vec![1, 3, 6, 0],
                vec![0, 1, 3, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
            ])
            .unwrap()
        );
    }

    #[test]
    fn extended_gram_matches_blowup_family() {
        for s in 1..=20 {
            assert_eq!(extended_gram(s), gram_family_blowup(s));
        }
    }

    #[test]
    fn adding_relations_never_raises_dims() {
        let base = sklyanin_int(1, 1, 1).unwrap();
        let mut relations = base.relations().to_vec();
        let mut extra = vec![BigRational::zero(); 9];
        extra[1] = BigRational::one(); // xy
        relations.push(extra);
        let bigger = QuadraticPresentation::new(3, relations).unwrap();
        let d_base = base.graded_dims(3).unwrap();
        let d_bigger = bigger.graded_dims(3).unwrap();
        for (a, b) in d_base.iter().zip(&d_bigger) {
            assert!(b <= a);
        }
    }
}
