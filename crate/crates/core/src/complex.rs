//! Finite ordered simplicial complexes and their JSON input format.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// A simplex as a strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; returns `None` on a repeated vertex or an empty list.
    pub fn new(mut vertices: Vec<usize>) -> Option<Simplex> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(vertices))
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The face opposite the `i`-th vertex.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Front face `[v0..vp]`.
    pub fn front(&self, p: usize) -> Simplex {
        Simplex(self.0[..=p].to_vec())
    }

    /// Back face `[vp..vn]`.
    pub fn back(&self, p: usize) -> Simplex {
        Simplex(self.0[p..].to_vec())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

impl Deref for Simplex {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// One `{"edge": [i, j], "value": m}` entry of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeValue {
    pub edge: [usize; 2],
    pub value: i64,
}

/// The JSON input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub vertices: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub xi: Vec<EdgeValue>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    // simplices[q] sorted lexicographically
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds the face closure of the given simplices on `vertex_count` vertices.
    pub fn from_simplices(vertex_count: usize, listed: &[Vec<usize>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut all: BTreeSet<Simplex> = (0..vertex_count).map(|v| Simplex(vec![v])).collect();
        for raw in listed {
            if let Some(&v) = raw.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                });
            }
            let s = Simplex::new(raw.clone())
                .ok_or_else(|| Error::Malformed(format!("simplex {raw:?} is empty or repeats a vertex")))?;
            if !seen.insert(s.clone()) {
                return Err(Error::DuplicateSimplex(s.0));
            }
            close_faces(&s, &mut all);
        }
        let top = all.iter().map(Simplex::dim).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); top + 1];
        for s in all {
            simplices[s.dim()].push(s);
        }
        let index = simplices
            .iter()
            .map(|layer| layer.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
            index,
        })
    }

    pub fn from_document(doc: &InputDocument) -> Result<Self> {
        Self::from_simplices(doc.vertices, &doc.maximal_simplices)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension (0 for a complex with no simplices of positive dimension).
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let q = s.len().checked_sub(1)?;
        self.index.get(q)?.get(&Simplex(s.to_vec())).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, l)| if q % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in self.simplices(1) {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Simplicial boundary `C_q -> C_{q-1}`: rows are `(q-1)`-simplices.
    pub fn boundary_matrix(&self, q: usize, field: Field) -> Matrix {
        let rows = if q == 0 { 0 } else { self.count(q - 1) };
        let mut m = Matrix::zeros(field, rows, self.count(q));
        if q == 0 {
            return m;
        }
        for (j, s) in self.simplices(q).iter().enumerate() {
            for i in 0..=q {
                let row = self.index_of(&s.face(i)).expect("closed under faces");
                m.set(row, j, sign(i, field));
            }
        }
        m
    }

    /// Simplicial coboundary `C^q -> C^{q+1}`: rows are `(q+1)`-simplices.
    pub fn coboundary_matrix(&self, q: usize, field: Field) -> Matrix {
        self.boundary_matrix(q + 1, field).transpose()
    }
}

fn close_faces(s: &Simplex, all: &mut BTreeSet<Simplex>) {
    if !all.insert(s.clone()) || s.len() == 1 {
        return;
    }
    for i in 0..s.len() {
        close_faces(&s.face(i), all);
    }
}

pub(crate) fn sign(i: usize, field: Field) -> Scalar {
    if i.is_multiple_of(2) {
        field.one()
    } else {
        -field.one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_from_edges() {
        let c = SimplicialComplex::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(c.f_vector(), vec![3, 3]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn triangle_faces_completed() {
        let c = SimplicialComplex::from_simplices(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(c.f_vector(), vec![3, 3, 1]);
        assert_eq!(c.index_of(&[0, 2]), Some(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::from_simplices(2, &[vec![0, 2]]),
            Err(Error::VertexOutOfRange { vertex: 2, count: 2 })
        ));
        assert!(matches!(
            SimplicialComplex::from_simplices(3, &[vec![0, 1], vec![1, 0]]),
            Err(Error::DuplicateSimplex(_))
        ));
        assert!(SimplicialComplex::from_simplices(3, &[vec![1, 1]]).is_err());
        assert!(InputDocument::from_json("{\"vertices\": 3}").is_err());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = SimplicialComplex::from_simplices(4, &[vec![0, 1, 2, 3]]).unwrap();
        let f = Field::Rationals;
        for q in 1..3 {
            assert!(c.boundary_matrix(q, f).mul(&c.boundary_matrix(q + 1, f)).is_zero());
        }
        assert_eq!(c.coboundary_matrix(3, f).rows(), 0);
        assert_eq!(c.coboundary_matrix(3, f).cols(), 1);
    }
}
