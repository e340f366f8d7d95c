use std::collections::VecDeque;

use serde::Serialize;

use crate::base::Ring;
use crate::error::{Error, Result};
use crate::geometry::symplecto::AffineSymplecto;
use crate::scalar::Scalar;

/// Largest finite group the closure construction will enumerate.
pub const MAX_FINITE_ORDER: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Finite { order: usize },
    FreeAbelian { rank: usize },
}

#[derive(Clone)]
struct FiniteData<S> {
    elements: Vec<AffineSymplecto<S>>,
    table: Vec<Vec<usize>>,
    generator_elements: Vec<usize>,
    /// `words[x] = Some((e, g))` with `x = e · generator g`; `None` for the identity.
    words: Vec<Option<(usize, usize)>>,
}

/// A group acting by affine symplectomorphisms. Element `e·f` acts as
/// `map(e) ∘ map(f)`; element 0 of a finite group is the identity.
#[derive(Clone)]
pub struct GroupAction<S> {
    ring: Ring,
    dim: usize,
    kind: GroupKind,
    generators: Vec<AffineSymplecto<S>>,
    finite: Option<FiniteData<S>>,
}

impl<S: Scalar> std::fmt::Debug for GroupAction<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupAction").field("kind", &self.kind).field("generators", &self.generators).finish()
    }
}

fn check_generators<S: Scalar>(generators: &[AffineSymplecto<S>]) -> Result<(Ring, usize)> {
    let first = generators.first().ok_or_else(|| Error::Invalid("an action needs at least one generator".into()))?;
    let (ring, dim) = (first.ring(), first.dim());
    if generators.iter().any(|g| g.ring() != ring || g.dim() != dim) {
        return Err(Error::Mismatch("generators act on different bases".into()));
    }
    Ok((ring, dim))
}

fn bfs_words(order: usize, generator_elements: &[usize], table: &[Vec<usize>]) -> Result<Vec<Option<(usize, usize)>>> {
    let mut words: Vec<Option<Option<(usize, usize)>>> = vec![None; order];
    words[0] = Some(None);
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for (gi, &g) in generator_elements.iter().enumerate() {
            let x = table[e][g];
            if words[x].is_none() {
                words[x] = Some(Some((e, gi)));
                queue.push_back(x);
            }
        }
    }
    words
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| Error::Invalid(format!("element {i} is not generated by the generators"))))
        .collect()
}

impl<S: Scalar> GroupAction<S> {
    /// Finite group generated by the given maps, enumerated by closure.
    pub fn finite_from_generators(generators: Vec<AffineSymplecto<S>>) -> Result<Self> {
        let (ring, dim) = check_generators(&generators)?;
        let mut elements = vec![AffineSymplecto::identity(ring, dim)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in &generators {
                let x = elements[e].compose(g);
                if !elements.contains(&x) {
                    if elements.len() >= MAX_FINITE_ORDER {
                        return Err(Error::Invalid(format!(
                            "generated group exceeds {MAX_FINITE_ORDER} elements (is it infinite?)"
                        )));
                    }
                    elements.push(x);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let order = elements.len();
        let mut table = vec![vec![0; order]; order];
        for i in 0..order {
            for j in 0..order {
                let x = elements[i].compose(&elements[j]);
                table[i][j] = elements.iter().position(|e| *e == x).ok_or_else(|| {
                    Error::Consistency("closure of generators is not closed under composition".into())
                })?;
            }
        }
        let generator_elements: Vec<usize> =
            generators.iter().map(|g| elements.iter().position(|e| e == g).expect("generator enumerated")).collect();
        let words = bfs_words(order, &generator_elements, &table)?;
        Ok(GroupAction {
            ring,
            dim,
            kind: GroupKind::Finite { order },
            generators,
            finite: Some(FiniteData { elements, table, generator_elements, words }),
        })
    }

    /// Finite group given by its multiplication table (element 0 the
    /// identity) with maps for the listed generator elements. The induced
    /// map on every element is checked to be a homomorphism.
    pub fn finite_from_table(
        table: Vec<Vec<usize>>,
        generator_elements: Vec<usize>,
        generators: Vec<AffineSymplecto<S>>,
    ) -> Result<Self> {
        let (ring, dim) = check_generators(&generators)?;
        let order = table.len();
        if order == 0 || table.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(Error::Invalid("multiplication table must be square with entries < order".into()));
        }
        if generator_elements.len() != generators.len() || generator_elements.iter().any(|&g| g >= order) {
            return Err(Error::Invalid("one map per generator element is required".into()));
        }
        for i in 0..order {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::Invalid("element 0 must be the identity".into()));
            }
            let mut seen = vec![false; order];
            for &x in &table[i] {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Invalid(format!("row {i} of the table is not a permutation")));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("table is not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let words = bfs_words(order, &generator_elements, &table)?;
        let mut elements = vec![AffineSymplecto::identity(ring, dim); order];
        let mut done = vec![false; order];
        done[0] = true;
        // Words are produced in BFS order, so predecessors are filled first.
        let mut order_of_fill: Vec<usize> = (1..order).collect();
        order_of_fill.sort_by_key(|&x| word_length(&words, x));
        for x in order_of_fill {
            let (e, gi) = words[x].expect("non-identity element has a word");
            debug_assert!(done[e]);
            elements[x] = elements[e].compose(&generators[gi]);
            done[x] = true;
        }
        for i in 0..order {
            for j in 0..order {
                if elements[table[i][j]] != elements[i].compose(&elements[j]) {
                    return Err(Error::Invalid(format!(
                        "generator maps violate the group relations: map({i}·{j}) ≠ map({i})∘map({j})"
                    )));
                }
            }
        }
        for (gi, &g) in generator_elements.iter().enumerate() {
            if elements[g] != generators[gi] {
                return Err(Error::Invalid(format!("generator {gi} is inconsistent with the table")));
            }
        }
        Ok(GroupAction {
            ring,
            dim,
            kind: GroupKind::Finite { order },
            generators,
            finite: Some(FiniteData { elements, table, generator_elements, words }),
        })
    }

    /// `ℤᵏ` acting through commuting generator maps.
    pub fn free_abelian(generators: Vec<AffineSymplecto<S>>) -> Result<Self> {
        let (ring, dim) = check_generators(&generators)?;
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i + 1) {
                if a.compose(b) != b.compose(a) {
                    return Err(Error::Invalid(format!("generators {i} and {j} do not commute")));
                }
            }
        }
        let rank = generators.len();
        Ok(GroupAction { ring, dim, kind: GroupKind::FreeAbelian { rank }, generators, finite: None })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[AffineSymplecto<S>] {
        &self.generators
    }

    pub fn is_finite(&self) -> bool {
        self.finite.is_some()
    }

    pub fn elements(&self) -> Option<&[AffineSymplecto<S>]> {
        self.finite.as_ref().map(|f| f.elements.as_slice())
    }

    pub fn table(&self) -> Option<&[Vec<usize>]> {
        self.finite.as_ref().map(|f| f.table.as_slice())
    }

    pub fn generator_elements(&self) -> Option<&[usize]> {
        self.finite.as_ref().map(|f| f.generator_elements.as_slice())
    }

    /// BFS normal form: `Some((e, g))` means element `= e · generator g`.
    pub fn word(&self, x: usize) -> Option<(usize, usize)> {
        self.finite.as_ref().and_then(|f| f.words[x])
    }

    /// Elements in an order where every word predecessor comes first.
    pub fn elements_in_word_order(&self) -> Vec<usize> {
        match &self.finite {
            Some(f) => {
                let mut v: Vec<usize> = (0..f.elements.len()).collect();
                v.sort_by_key(|&x| word_length(&f.words, x));
                v
            }
            None => Vec::new(),
        }
    }
}

fn word_length(words: &[Option<(usize, usize)>], mut x: usize) -> usize {
    let mut len = 0;
    while let Some((e, _)) = words[x] {
        x = e;
        len += 1;
    }
    len
}
