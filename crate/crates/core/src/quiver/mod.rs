//! Quivers, paths and linear combinations of paths.
//!
//! Paths compose left to right: for paths `p` and `q` with `t(p) = s(q)`, `pq` is `p` followed
//! by `q`. The trivial path at vertex `i` is written `e_i`.

mod parse;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{format_rational, Field, Rational};

pub(crate) use parse::{lex_lincomb, RawTerm};
pub use parse::{parse_algebra, parse_rational, serialize_algebra, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose in `{0}`")]
    NotComposable(String),
    #[error("power of `{0}`, which is not a loop")]
    NonLoopPower(String),
    #[error("zero relation")]
    ZeroRelation,
    #[error("relation `{0}` has paths with different sources or targets")]
    NonParallel(String),
    #[error("relation `{0}` is inhomogeneous: paths of different lengths")]
    Inhomogeneous(String),
    #[error("relation `{0}` has length below 2")]
    TooShort(String),
    #[error("relations must be given over {0} but a coefficient is not representable")]
    Coefficient(Field),
}

/// An arrow `id : source -> target`, endpoints given as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertex and arrow order is declaration order and indexes everything
/// downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

fn valid_vertex_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn valid_arrow_id(s: &str) -> bool {
    valid_vertex_id(s)
        && s.chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, source id, target id)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, SpecError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            q.add_vertex(v.into())?;
        }
        for (id, s, t) in arrows {
            q.add_arrow(id, &s, &t)?;
        }
        Ok(q)
    }

    pub(crate) fn add_vertex(&mut self, id: String) -> Result<usize, SpecError> {
        if !valid_vertex_id(&id) {
            return Err(SpecError::InvalidIdentifier(id));
        }
        if self.vertex_index.contains_key(&id) {
            return Err(SpecError::DuplicateVertex(id));
        }
        let i = self.vertices.len();
        self.vertex_index.insert(id.clone(), i);
        self.vertices.push(id);
        Ok(i)
    }

    pub(crate) fn add_arrow(
        &mut self,
        id: String,
        source: &str,
        target: &str,
    ) -> Result<usize, SpecError> {
        if !valid_arrow_id(&id) {
            return Err(SpecError::InvalidIdentifier(id));
        }
        if self.arrow_index.contains_key(&id) {
            return Err(SpecError::DuplicateArrow(id));
        }
        let source = self.vertex(source)?;
        let target = self.vertex(target)?;
        let i = self.arrows.len();
        self.arrow_index.insert(id.clone(), i);
        self.arrows.push(Arrow { id, source, target });
        Ok(i)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, id: &str) -> Result<usize, SpecError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| SpecError::UnknownVertex(id.to_string()))
    }

    pub fn arrow(&self, id: &str) -> Result<usize, SpecError> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| SpecError::UnknownArrow(id.to_string()))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].id
    }

    /// Arrows starting at `v`, in declaration order.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    /// Arrows ending at `v`, in declaration order.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// The path through the given arrows, if consecutive arrows compose.
    pub fn path(&self, arrows: &[usize]) -> Option<Path> {
        let (&first, rest) = arrows.split_first()?;
        let mut target = self.arrows[first].target;
        for &a in rest {
            if self.arrows[a].source != target {
                return None;
            }
            target = self.arrows[a].target;
        }
        Some(Path {
            arrows: arrows.to_vec(),
            source: self.arrows[first].source,
            target,
        })
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        Path {
            arrows: vec![a],
            source: self.arrows[a].source,
            target: self.arrows[a].target,
        }
    }

    /// Vertices visited by `p`, in order (a single vertex for trivial paths).
    pub fn visited(&self, p: &Path) -> Vec<usize> {
        let mut out = vec![p.source];
        out.extend(p.arrows.iter().map(|&a| self.arrows[a].target));
        out
    }

    /// Whether `q` divides `p`, i.e. `p = p1 q p2` for some paths `p1`, `p2`.
    pub fn divides(&self, q: &Path, p: &Path) -> bool {
        if q.is_trivial() {
            return self.visited(p).contains(&q.source);
        }
        p.arrows.windows(q.len()).any(|w| w == q.arrows.as_slice())
    }

    /// Whether every ordered pair of vertices is joined by a path.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                for a in &self.arrows {
                    let (from, to) = if forward {
                        (a.source, a.target)
                    } else {
                        (a.target, a.source)
                    };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        queue.push_back(to);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        reach(true) && reach(false)
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            std::mem::swap(&mut a.source, &mut a.target);
        }
        q
    }

    /// `a*b*c`, with runs of a repeated loop written `x^k`; trivial paths are `e_<vertex>`.
    pub fn path_string(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < p.arrows.len() {
            let a = p.arrows[i];
            let mut run = 1;
            while i + run < p.arrows.len() && p.arrows[i + run] == a {
                run += 1;
            }
            if run == 1 {
                parts.push(self.arrows[a].id.clone());
            } else {
                parts.push(format!("{}^{}", self.arrows[a].id, run));
            }
            i += run;
        }
        parts.join("*")
    }

    /// Formats a linear combination; minus signs are folded into the separators.
    pub fn lincomb_string(&self, z: &LinComb) -> String {
        if z.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (p, c)) in z.terms().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&self.path_string(p));
        }
        out
    }
}

/// A path in a quiver: a trivial path `e_v` or a nonempty composable arrow sequence.
///
/// Ordering is lexicographic in the arrow indices, hence in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, defined iff `t(self) = s(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            arrows,
            source: self.source,
            target: other.target,
        })
    }

    /// `self` followed by the arrow `a` with endpoints `(source, target)`.
    pub(crate) fn extend(&self, a: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            arrows,
            source: self.source,
            target,
        }
    }

    /// The same arrows read backwards, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            arrows,
            source: self.target,
            target: self.source,
        }
    }
}

/// A finite linear combination of paths with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Path, Rational>,
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, Rational)>) -> Self {
        let mut z = Self::new();
        for (p, c) in terms {
            z.add_term(p, c);
        }
        z
    }

    /// A single path with coefficient one.
    pub fn monomial(p: Path) -> Self {
        Self::from_terms([(p, Rational::one())])
    }

    /// `p - q`.
    pub fn binomial(p: Path, q: Path) -> Self {
        Self::from_terms([(p, Rational::one()), (q, -Rational::one())])
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Common `(source, target)` when all paths are parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        it.all(|p| (p.source, p.target) == ends).then_some(ends)
    }

    /// Common length when all paths have the same length.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.len();
        it.all(|p| p.len() == d).then_some(d)
    }

    pub fn reversed(&self) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.reversed(), c.clone()))
                .collect(),
        }
    }
}

/// A parsed, validated algebra description: quiver, generating relations and ground field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<LinComb>,
}

impl AlgebraSpec {
    /// Validates the relations: nonzero, parallel, length-homogeneous of length at least 2.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        quiver: Quiver,
        relations: Vec<LinComb>,
    ) -> Result<Self, SpecError> {
        for r in &relations {
            validate_relation(&quiver, r)?;
        }
        Ok(AlgebraSpec {
            name: name.into(),
            field,
            quiver,
            relations,
        })
    }

    /// Reverses every arrow and every relation. The name toggles an `_op` suffix, so taking the
    /// opposite twice gives back an identical spec.
    pub fn opposite(&self) -> AlgebraSpec {
        let name = match self.name.strip_suffix("_op") {
            Some(base) => base.to_string(),
            None => format!("{}_op", self.name),
        };
        AlgebraSpec {
            name,
            field: self.field,
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(LinComb::reversed).collect(),
        }
    }

    pub fn serialize(&self) -> String {
        serialize_algebra(self)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

pub(crate) fn validate_relation(quiver: &Quiver, r: &LinComb) -> Result<(), SpecError> {
    if r.is_zero() {
        return Err(SpecError::ZeroRelation);
    }
    let text = || quiver.lincomb_string(r);
    match r.degree() {
        None => return Err(SpecError::Inhomogeneous(text())),
        Some(d) if d < 2 => return Err(SpecError::TooShort(text())),
        Some(_) => {}
    }
    if r.endpoints().is_none() {
        return Err(SpecError::NonParallel(text()));
    }
    Ok(())
}
