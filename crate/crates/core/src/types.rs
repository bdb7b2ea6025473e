//! Semi-equivelar face-size types and the census of types admissible on a
//! surface of negative Euler characteristic.
//!
//! A regular embedding of a `(d+1)`-colored graph on `p` vertices has
//! `V = p`, `E = p(d+1)/2` and `F = p Σ 1/p_i`, so the face sizes around a
//! vertex determine `χ / p = 1 - (d+1)/2 + Σ 1/p_i`. The census solves this
//! for every cyclic sequence of even sizes `≥ 4` in exact rational
//! arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedSub, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

type Q = Ratio<i64>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("face size {0} is not an even integer >= 4")]
    BadFaceSize(usize),
    #[error("a type needs at least three face sizes, got {0}")]
    TooShort(usize),
    #[error("the census needs a negative Euler characteristic, got {0}")]
    NonNegativeChi(i64),
    #[error("color count {0} is below three")]
    TooFewColors(usize),
    #[error("rational arithmetic overflowed")]
    Overflow,
}

/// Cyclic sequence `(p_0, .., p_d)` of face sizes in canonical form: the
/// lexicographically least sequence among all rotations and reflections.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeSequence(Vec<usize>);

impl TypeSequence {
    /// Canonical representative of the rotation/reflection class of `seq`.
    pub fn normalize(seq: &[usize]) -> Result<Self, TypeError> {
        if seq.len() < 3 {
            return Err(TypeError::TooShort(seq.len()));
        }
        if let Some(&bad) = seq.iter().find(|&&q| q < 4 || q % 2 == 1) {
            return Err(TypeError::BadFaceSize(bad));
        }
        Ok(TypeSequence(canonical_rotation(seq)))
    }

    pub fn faces(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_face(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Distinct sizes `q_i` with their multiplicities `k_i`, ascending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for q in sorted {
            match out.last_mut() {
                Some((last, k)) if *last == q => *k += 1,
                _ => out.push((q, 1)),
            }
        }
        out
    }

    /// Exponent notation such as `(4^3,12)`, `(10^2,4)` or `(4,6,4,6)`.
    ///
    /// When every size occupies one contiguous arc of the cycle, groups are
    /// listed by decreasing multiplicity and then increasing size; otherwise
    /// the canonical sequence is printed as is.
    pub fn notation(&self) -> String {
        let mults = self.multiplicities();
        let n = self.0.len();
        // number of positions where the size changes going round the cycle
        let changes = (0..n).filter(|&i| self.0[i] != self.0[(i + 1) % n]).count();
        let grouped = mults.len() == 1 || changes == mults.len();
        let parts: Vec<String> = if grouped {
            let mut m = mults;
            m.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            m.iter()
                .map(|&(q, k)| {
                    if k == 1 {
                        q.to_string()
                    } else {
                        format!("{q}^{k}")
                    }
                })
                .collect()
        } else {
            self.0.iter().map(usize::to_string).collect()
        };
        format!("({})", parts.join(","))
    }
}

impl fmt::Debug for TypeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for TypeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Least rotation or reflection of a cyclic sequence.
pub(crate) fn canonical_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let n = seq.len();
    let mut best: Option<Vec<T>> = None;
    for start in 0..n {
        for forward in [true, false] {
            let cand: Vec<T> = (0..n)
                .map(|i| {
                    let idx = if forward {
                        (start + i) % n
                    } else {
                        (start + n - i) % n
                    };
                    seq[idx].clone()
                })
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// A type together with the vertex count and Euler characteristic it forces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeSolution {
    pub seq: TypeSequence,
    pub color_count: usize,
    pub vertex_count: usize,
    pub chi: i64,
}

impl TypeSolution {
    fn sort_key(&self) -> (std::cmp::Reverse<usize>, &TypeSequence) {
        (std::cmp::Reverse(self.color_count), &self.seq)
    }
}

impl Ord for TypeSolution {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then(self.vertex_count.cmp(&other.vertex_count))
            .then(self.chi.cmp(&other.chi))
    }
}

impl PartialOrd for TypeSolution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TypeSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.seq.notation(), self.vertex_count)
    }
}

/// `Σ 1/q` over the given sizes.
fn reciprocal_sum(sizes: &[usize]) -> Result<Q, TypeError> {
    sizes.iter().try_fold(Q::zero(), |acc, &q| {
        acc.checked_add(&Q::new(1, q as i64))
            .ok_or(TypeError::Overflow)
    })
}

/// The vertex count forced by `faces` on a surface with Euler characteristic
/// `chi`, if it is a positive even integer at least as large as every face.
///
/// Only the multiset of sizes matters, so raw (non-canonical) sequences are
/// accepted as well.
pub fn solve_vertex_count(faces: &[usize], chi: i64) -> Result<Option<usize>, TypeError> {
    let n = faces.len() as i64;
    let s = reciprocal_sum(faces)?;
    // 1 - n/2 + S
    let per_vertex = Q::from_integer(1)
        .checked_sub(&Q::new(n, 2))
        .and_then(|x| x.checked_add(&s))
        .ok_or(TypeError::Overflow)?;
    if per_vertex.is_zero() || chi == 0 {
        return Ok(None);
    }
    let p = Q::from_integer(chi)
        .checked_div(&per_vertex)
        .ok_or(TypeError::Overflow)?;
    if !p.is_integer() || !p.is_positive() {
        return Ok(None);
    }
    let p = *p.numer() as usize;
    let max_face = faces.iter().copied().max().unwrap_or(0);
    Ok((p.is_multiple_of(2) && p >= max_face).then_some(p))
}

/// Filters applied by [`enumerate_types`] on top of the Euler equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Restrict to one color count `d + 1`.
    pub color_count: Option<usize>,
    /// Every face size divides `p`. The faces of one color pair partition
    /// the vertex set into cycles of equal length, so this holds for every
    /// realizable type.
    pub require_face_divisibility: bool,
    /// `p ≥ d`: rules out the degenerate `(4^6);4` solution at `χ = -2`.
    pub require_vertices_at_least_dimension: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            color_count: None,
            require_face_divisibility: true,
            require_vertices_at_least_dimension: true,
        }
    }
}

/// Largest color count the Euler equation admits for `chi < 0`:
/// with every size at least 4, `d + 1 ≤ 4 - 4χ/p ≤ 4 - χ`.
pub fn max_color_count(chi: i64) -> usize {
    (4 - chi).max(0) as usize
}

/// Every type admissible on a surface with Euler characteristic `chi < 0`,
/// sorted by decreasing color count and then canonical sequence.
pub fn enumerate_types(
    chi: i64,
    options: &EnumerateOptions,
) -> Result<Vec<TypeSolution>, TypeError> {
    if chi >= 0 {
        return Err(TypeError::NonNegativeChi(chi));
    }
    let counts: Vec<usize> = match options.color_count {
        Some(n) if n < 3 => return Err(TypeError::TooFewColors(n)),
        Some(n) => vec![n],
        None => (3..=max_color_count(chi)).collect(),
    };

    let mut found = BTreeSet::new();
    for n in counts {
        let mut multiset = Vec::with_capacity(n);
        let mut leaves = Vec::new();
        descend(n, chi, &mut multiset, Q::zero(), &mut leaves)?;
        for (multiset, p) in leaves {
            if options.require_face_divisibility && multiset.iter().any(|&q| p % q != 0) {
                continue;
            }
            if options.require_vertices_at_least_dimension && p < n - 1 {
                continue;
            }
            for seq in cyclic_arrangements(&multiset) {
                found.insert(TypeSolution {
                    seq: TypeSequence(seq),
                    color_count: n,
                    vertex_count: p,
                    chi,
                });
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Non-decreasing multisets of even sizes `≥ 4`.
///
/// At position `j` with `m` slots left (including `j`) and partial
/// reciprocal sum `s`, every remaining size is at least `q_j`, and `p ≥ q_j`
/// with `χ < 0` gives `Σ ≥ (d+1)/2 - 1 + χ/q_j`. Together
/// `q_j ≤ (m - χ) / ((d+1)/2 - 1 - s)`, which bounds the search.
fn descend(
    n: usize,
    chi: i64,
    multiset: &mut Vec<usize>,
    partial: Q,
    out: &mut Vec<(Vec<usize>, usize)>,
) -> Result<(), TypeError> {
    let j = multiset.len();
    if j == n {
        if let Some(p) = solve_vertex_count(multiset, chi)? {
            out.push((multiset.clone(), p));
        }
        return Ok(());
    }
    let m = (n - j) as i64;
    let slack = Q::new(n as i64, 2)
        .checked_sub(&Q::from_integer(1))
        .and_then(|x| x.checked_sub(&partial))
        .ok_or(TypeError::Overflow)?;
    if !slack.is_positive() {
        return Ok(());
    }
    let bound = Q::from_integer(m - chi)
        .checked_div(&slack)
        .ok_or(TypeError::Overflow)?
        .floor()
        .to_integer();
    let lo = multiset.last().copied().unwrap_or(4);
    let mut q = lo;
    while (q as i64) <= bound {
        let next = partial
            .checked_add(&Q::new(1, q as i64))
            .ok_or(TypeError::Overflow)?;
        multiset.push(q);
        descend(n, chi, multiset, next, out)?;
        multiset.pop();
        q += 2;
    }
    Ok(())
}

/// All distinct cyclic arrangements (up to rotation and reflection) of a
/// multiset, each in canonical form.
pub fn cyclic_arrangements(multiset: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = multiset.to_vec();
    sorted.sort_unstable();
    let mut out = BTreeSet::new();
    loop {
        out.insert(canonical_rotation(&sorted));
        if !next_permutation(&mut sorted) {
            break;
        }
    }
    out.into_iter().collect()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Checks the Euler equation `1 - n/2 + Σ 1/p_i = χ / p` exactly.
pub fn satisfies_euler_equation(faces: &[usize], vertex_count: usize, chi: i64) -> bool {
    let Ok(s) = reciprocal_sum(faces) else {
        return false;
    };
    let lhs = Q::from_integer(1) - Q::new(faces.len() as i64, 2) + s;
    lhs == Q::new(chi, vertex_count as i64)
}
