use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::matrix::{BondOrder, CoxeterMatrix};
use super::CoxeterError;
use crate::field::{FieldScalar, NumberField};
use crate::generators::GeneratorSet;

/// A vector in the span of the simple roots, in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<FieldScalar>);

impl Root {
    pub fn coordinates(&self) -> &[FieldScalar] {
        &self.0
    }

    /// Generators whose coordinate is nonzero.
    pub fn support(&self) -> GeneratorSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(FieldScalar::neg).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
}

/// A group element in normal form.
///
/// The canonical word is the lexicographically smallest reduced word, read
/// by repeatedly stripping the smallest left descent. `columns[j]` caches
/// `w⁻¹(α_j)`; `descents` caches the left descent set.
#[derive(Clone)]
pub struct GroupElement {
    word: Vec<usize>,
    descents: GeneratorSet,
    columns: Arc<[Root]>,
}

impl GroupElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn left_descents(&self) -> GeneratorSet {
        self.descents
    }

    pub fn has_left_descent(&self, s: usize) -> bool {
        self.descents.contains(s)
    }

    /// Generators occurring in any (equivalently every) reduced word.
    pub fn support(&self) -> GeneratorSet {
        self.word.iter().copied().collect()
    }

    /// `w⁻¹(α_j)` for each simple root `α_j`.
    pub fn inverse_images(&self) -> &[Root] {
        &self.columns
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length first, then canonical word lexicographically.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "ε")
        } else {
            let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
            write!(f, "{}", parts.join(""))
        }
    }
}

/// A Coxeter system with its geometric representation over an exact field.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    names: Vec<String>,
    index: HashMap<String, usize>,
    matrix: CoxeterMatrix,
    field: NumberField,
    /// `2·B(α_i, α_j)`.
    form: Vec<Vec<FieldScalar>>,
    simple: Vec<Root>,
}

impl CoxeterSystem {
    /// Builds a system with generators named `s1, …, sn`.
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let names = (1..=matrix.rank()).map(|i| format!("s{i}")).collect();
        Self::with_names(matrix, names).expect("default names are distinct")
    }

    pub fn with_names(matrix: CoxeterMatrix, names: Vec<String>) -> Result<Self, CoxeterError> {
        let n = matrix.rank();
        if names.len() != n {
            return Err(CoxeterError::NameCount {
                names: names.len(),
                rank: n,
            });
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            let trimmed = name.trim();
            if trimmed.is_empty()
                || trimmed.contains(|c: char| c == ',' || c == '|' || c.is_whitespace())
            {
                return Err(CoxeterError::BadName(name.clone()));
            }
            if index.insert(trimmed.to_string(), i).is_some() {
                return Err(CoxeterError::DuplicateName(name.clone()));
            }
        }
        let field = NumberField::new(matrix.field_order());
        let form = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match matrix.get(i, j) {
                        BondOrder::Finite(1) => field.from_integer(2),
                        BondOrder::Finite(m) => field
                            .twice_cos_pi_over(m as u64)
                            .expect("entry divides the field order")
                            .neg(),
                        BondOrder::Infinite => field.from_integer(-2),
                    })
                    .collect()
            })
            .collect();
        let simple = (0..n)
            .map(|i| {
                let mut coords = vec![field.zero(); n];
                coords[i] = field.one();
                Root(coords)
            })
            .collect();
        Ok(CoxeterSystem {
            names: names.into_iter().map(|s| s.trim().to_string()).collect(),
            index,
            matrix,
            field,
            form,
            simple,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name.trim()).copied()
    }

    pub fn all_generators(&self) -> GeneratorSet {
        GeneratorSet::full(self.rank())
    }

    /// `2·B(α_i, α_j)`; equals `-2cos(π/m_ij)`, or `-2` when `m_ij = ∞`.
    pub fn twice_form(&self, i: usize, j: usize) -> &FieldScalar {
        &self.form[i][j]
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.simple[i]
    }

    /// `2·B(r, α_i)`.
    fn twice_pairing(&self, r: &Root, i: usize) -> FieldScalar {
        let mut acc = self.field.zero();
        for (k, c) in r.0.iter().enumerate() {
            if c.is_zero() || self.form[k][i].is_zero() {
                continue;
            }
            acc.add_assign_ref(&self.field.mul(c, &self.form[k][i]));
        }
        acc
    }

    /// `σ_i(r) = r − 2B(r, α_i)·α_i`. Only coordinate `i` changes.
    pub fn reflect(&self, i: usize, r: &Root) -> Root {
        let pairing = self.twice_pairing(r, i);
        let mut out = r.clone();
        out.0[i].sub_assign_ref(&pairing);
        out
    }

    /// Classifies a root as positive or negative; mixed signs are an
    /// internal error since every root lies on one side.
    pub fn root_sign(&self, r: &Root) -> Result<RootSign, CoxeterError> {
        let mut pos = false;
        let mut neg = false;
        for c in &r.0 {
            match self.field.sign(c) {
                Ordering::Greater => pos = true,
                Ordering::Less => neg = true,
                Ordering::Equal => {}
            }
        }
        match (pos, neg) {
            (true, false) => Ok(RootSign::Positive),
            (false, true) => Ok(RootSign::Negative),
            _ => Err(CoxeterError::MixedSignRoot(format!("{r:?}"))),
        }
    }

    fn is_negative(&self, r: &Root) -> bool {
        self.root_sign(r).expect("images of simple roots are roots") == RootSign::Negative
    }

    /// Left multiplication by `s_i` on cached columns:
    /// `(s_i w)⁻¹(α_j) = w⁻¹(α_j) − 2B(α_j, α_i)·w⁻¹(α_i)`.
    fn left_mul_columns(&self, i: usize, cols: &mut [Root]) {
        let base = cols[i].clone();
        for (j, col) in cols.iter_mut().enumerate() {
            let coeff = &self.form[j][i];
            if coeff.is_zero() {
                continue;
            }
            for (c, b) in col.0.iter_mut().zip(&base.0) {
                if !b.is_zero() {
                    c.sub_assign_ref(&self.field.mul(coeff, b));
                }
            }
        }
    }

    /// Right multiplication by `s_i` on cached columns: `(w s_i)⁻¹ = s_i w⁻¹`.
    fn right_mul_columns(&self, i: usize, cols: &mut [Root]) {
        for col in cols.iter_mut() {
            *col = self.reflect(i, col);
        }
    }

    fn descent_mask(&self, cols: &[Root]) -> GeneratorSet {
        cols.iter()
            .enumerate()
            .filter(|(_, c)| self.is_negative(c))
            .map(|(i, _)| i)
            .collect()
    }

    fn from_columns(&self, cols: Vec<Root>) -> GroupElement {
        let descents = self.descent_mask(&cols);
        let mut word = Vec::new();
        let mut work = cols.clone();
        let mut mask = descents;
        while let Some(i) = mask.first() {
            word.push(i);
            self.left_mul_columns(i, &mut work);
            mask = self.descent_mask(&work);
        }
        GroupElement {
            word,
            descents,
            columns: cols.into(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            word: Vec::new(),
            descents: GeneratorSet::EMPTY,
            columns: self.simple.clone().into(),
        }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        self.element(&[i]).expect("valid generator index")
    }

    /// The element spelled by an arbitrary word of generator indices.
    pub fn element(&self, word: &[usize]) -> Result<GroupElement, CoxeterError> {
        let n = self.rank();
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(CoxeterError::BadGenerator(bad));
        }
        let mut cols = self.simple.clone();
        for &i in word {
            self.right_mul_columns(i, &mut cols);
        }
        Ok(self.from_columns(cols))
    }

    /// `s_i · w`.
    pub fn left_multiply(&self, i: usize, w: &GroupElement) -> GroupElement {
        let mut cols = w.columns.to_vec();
        self.left_mul_columns(i, &mut cols);
        self.from_columns(cols)
    }

    /// `w · s_i`.
    pub fn right_multiply(&self, w: &GroupElement, i: usize) -> GroupElement {
        let mut cols = w.columns.to_vec();
        self.right_mul_columns(i, &mut cols);
        self.from_columns(cols)
    }

    pub fn multiply(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        let mut cols = u.columns.to_vec();
        for &i in &v.word {
            self.right_mul_columns(i, &mut cols);
        }
        self.from_columns(cols)
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.element(&rev).expect("letters of a valid element")
    }

    /// Left descents via the length criterion `ℓ(s w) < ℓ(w)`.
    pub fn left_descents_by_length(&self, w: &GroupElement) -> GeneratorSet {
        (0..self.rank())
            .filter(|&i| self.left_multiply(i, w).length() < w.length())
            .collect()
    }

    /// Right descents: `{i : w(α_i) < 0}`, read off the inverse.
    pub fn right_descents(&self, w: &GroupElement) -> GeneratorSet {
        self.inverse(w).left_descents()
    }

    /// The elements `s_1, …` formatted with generator names, e.g. `"s1 s2 s1"`.
    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_element(&self, w: &GroupElement) -> String {
        self.format_word(&w.word)
    }

    /// Parses a comma- or whitespace-separated list of generator names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, CoxeterError> {
        text.split(|c: char| c == ',' || c.is_whitespace() || c == '|')
            .filter(|t| !t.is_empty())
            .map(|t| {
                self.generator_index(t)
                    .ok_or_else(|| CoxeterError::UnknownGenerator(t.to_string()))
            })
            .collect()
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement, CoxeterError> {
        let word = self.parse_word(text)?;
        self.element(&word)
    }

    /// Positive definiteness of the bilinear form, decided by division-free
    /// elimination with certified pivot signs. Equivalent to finiteness.
    pub fn is_finite(&self) -> bool {
        let n = self.rank();
        let mut a: Vec<Vec<FieldScalar>> = self.form.clone();
        for i in 0..n {
            if self.field.sign(&a[i][i]) != Ordering::Greater {
                return false;
            }
            let pivot = a[i][i].clone();
            for k in i + 1..n {
                let factor = a[k][i].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in i..n {
                    let scaled = self.field.mul(&pivot, &a[k][j]);
                    let sub = self.field.mul(&factor, &a[i][j]);
                    a[k][j] = &scaled - &sub;
                }
            }
        }
        true
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.names.join(", "))?;
        for row in self.matrix.rows() {
            let cells: Vec<String> = row.iter().map(|m| m.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::types;

    #[test]
    fn reflection_negates_its_root() {
        for sys in [types::a(3), types::b(3), types::affine_a(2)] {
            for i in 0..sys.rank() {
                assert_eq!(
                    sys.reflect(i, sys.simple_root(i)),
                    sys.simple_root(i).negated()
                );
            }
        }
    }

    #[test]
    fn a2_reflection_adds_roots() {
        let sys = types::a(2);
        let r = sys.reflect(0, sys.simple_root(1));
        let one = sys.field().one();
        assert_eq!(r, Root(vec![one.clone(), one]));
    }

    #[test]
    fn b3_reflection_picks_up_sqrt2() {
        let sys = types::b(3);
        let r = sys.reflect(1, sys.simple_root(2));
        let f = sys.field();
        let sqrt2 = f.twice_cos_pi_over(4).unwrap();
        assert_eq!(f.mul(&sqrt2, &sqrt2), f.from_integer(2));
        assert_eq!(r, Root(vec![f.zero(), sqrt2, f.one()]));
    }

    #[test]
    fn canonical_words_are_lexicographically_smallest() {
        let sys = types::a(2);
        let w = sys.element(&[1, 0, 1]).unwrap();
        assert_eq!(w.word(), &[0, 1, 0]);
        assert_eq!(w.length(), 3);
        let e = sys.element(&[0, 0]).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn bad_generator_is_rejected() {
        let sys = types::a(2);
        assert_eq!(
            sys.element(&[5]).unwrap_err(),
            CoxeterError::BadGenerator(5)
        );
        assert!(matches!(
            sys.parse_word("s1,x"),
            Err(CoxeterError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn mixed_sign_vectors_are_rejected() {
        let sys = types::a(2);
        let f = sys.field();
        let bad = Root(vec![f.one(), f.from_integer(-1)]);
        assert!(matches!(
            sys.root_sign(&bad),
            Err(CoxeterError::MixedSignRoot(_))
        ));
    }

    #[test]
    fn finiteness_by_positive_definiteness() {
        assert!(types::a(3).is_finite());
        assert!(types::b(3).is_finite());
        assert!(types::h(3).is_finite());
        assert!(types::d(4).is_finite());
        assert!(!types::affine_a(2).is_finite());
        let free =
            CoxeterSystem::new(CoxeterMatrix::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap());
        assert!(!free.is_finite());
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let m = CoxeterMatrix::from_integers(&[vec![1, 3], vec![3, 1]]).unwrap();
        assert!(matches!(
            CoxeterSystem::with_names(m.clone(), vec!["a".into(), "a".into()]),
            Err(CoxeterError::DuplicateName(_))
        ));
        assert!(matches!(
            CoxeterSystem::with_names(m, vec!["a b".into(), "c".into()]),
            Err(CoxeterError::BadName(_))
        ));
    }
}
