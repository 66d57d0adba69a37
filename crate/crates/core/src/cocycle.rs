//! Integral 1-cocycles: the discrete closed 1-forms of the input.
//!
//! A cocycle assigns an integer to every oriented edge `[i, j]`, `i < j`; the
//! reversed edge carries the negated value. Line integrals, periods and the
//! exactness test all reduce to walks on the 1-skeleton.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::complex::{EdgeValue, InputDocument, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntegralCocycle {
    values: BTreeMap<(usize, usize), i64>,
}

impl IntegralCocycle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads the `xi` list of an input document (edges must be listed with `i < j`).
    pub fn from_document(doc: &InputDocument) -> Result<Self> {
        Self::from_edge_values(&doc.xi)
    }

    pub fn from_edge_values(entries: &[EdgeValue]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for e in entries {
            let [i, j] = e.edge;
            if i >= j {
                return Err(Error::Malformed(format!("edge {:?} must be listed with i < j", e.edge)));
            }
            if values.insert((i, j), e.value).is_some() {
                return Err(Error::Malformed(format!("edge {:?} listed twice", e.edge)));
            }
        }
        Ok(IntegralCocycle { values })
    }

    /// Zero cocycle on every edge of `complex`.
    pub fn zero_on(complex: &SimplicialComplex) -> Self {
        let values = complex.simplices(1).iter().map(|e| ((e[0], e[1]), 0)).collect();
        IntegralCocycle { values }
    }

    /// `f(j) - f(i)` on every edge.
    pub fn coboundary_of(complex: &SimplicialComplex, potential: &[i64]) -> Self {
        let values = complex
            .simplices(1)
            .iter()
            .map(|e| ((e[0], e[1]), potential[e[1]] - potential[e[0]]))
            .collect();
        IntegralCocycle { values }
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        if i < j {
            self.values.insert((i, j), value);
        } else {
            self.values.insert((j, i), -value);
        }
    }

    /// Value on the oriented edge `i -> j`.
    pub fn value(&self, i: usize, j: usize) -> Option<i64> {
        if i < j {
            self.values.get(&(i, j)).copied()
        } else {
            self.values.get(&(j, i)).map(|v| -v)
        }
    }

    /// Value on an edge known to exist; panics otherwise.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.value(i, j)
            .unwrap_or_else(|| panic!("no cocycle value on edge [{i}, {j}]"))
    }

    pub fn entries(&self) -> impl Iterator<Item = ([usize; 2], i64)> + '_ {
        self.values.iter().map(|(&(i, j), &v)| ([i, j], v))
    }

    pub fn to_edge_values(&self) -> Vec<EdgeValue> {
        self.entries().map(|(edge, value)| EdgeValue { edge, value }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        IntegralCocycle {
            values: self.values.iter().map(|(&e, &v)| (e, v * k)).collect(),
        }
    }

    pub fn sub(&self, other: &IntegralCocycle) -> Self {
        let mut values = self.values.clone();
        for (&e, &v) in &other.values {
            *values.entry(e).or_insert(0) -= v;
        }
        IntegralCocycle { values }
    }

    /// Image in field coefficients as a 1-cochain indexed like `complex.simplices(1)`.
    pub fn to_field(&self, complex: &SimplicialComplex, field: Field) -> Vec<Scalar> {
        complex
            .simplices(1)
            .iter()
            .map(|e| field.from_i64(self.at(e[0], e[1])))
            .collect()
    }

    /// Line integral along a vertex path.
    pub fn integrate(&self, path: &[usize]) -> Result<i64> {
        path.windows(2).try_fold(0i64, |acc, w| {
            self.value(w[0], w[1])
                .map(|v| acc + v)
                .ok_or(Error::NotAdjacent(w[0], w[1]))
        })
    }
}

/// Result of [`validate_cocycle`]; serialized as `{"ok": .., "violations": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub ok: bool,
    pub violations: Vec<[usize; 3]>,
}

/// Checks `xi[i,j] + xi[j,k] = xi[i,k]` on every triangle.
pub fn validate_cocycle(complex: &SimplicialComplex, xi: &IntegralCocycle) -> Result<CocycleReport> {
    for e in complex.simplices(1) {
        if xi.value(e[0], e[1]).is_none() {
            return Err(Error::MissingEdgeValue([e[0], e[1]]));
        }
    }
    if let Some(([i, j], _)) = xi.entries().find(|(e, _)| !complex.contains(e)) {
        return Err(Error::NotAnEdge(vec![i, j]));
    }
    let violations: Vec<[usize; 3]> = complex
        .simplices(2)
        .iter()
        .filter(|t| xi.at(t[0], t[1]) + xi.at(t[1], t[2]) != xi.at(t[0], t[2]))
        .map(|t| [t[0], t[1], t[2]])
        .collect();
    Ok(CocycleReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Validates and turns a failing report into [`Error::InvalidCocycle`].
pub fn require_cocycle(complex: &SimplicialComplex, xi: &IntegralCocycle) -> Result<()> {
    let report = validate_cocycle(complex, xi)?;
    if report.ok {
        Ok(())
    } else {
        Err(Error::InvalidCocycle(report.violations))
    }
}

pub fn integrate_path(xi: &IntegralCocycle, path: &[usize]) -> Result<i64> {
    xi.integrate(path)
}

// BFS spanning tree rooted at vertex 0, with the tree potential of xi.
struct SpanningTree {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    potential: Vec<i64>,
    non_tree: Vec<(usize, usize)>,
}

fn spanning_tree(complex: &SimplicialComplex, xi: &IntegralCocycle) -> Result<SpanningTree> {
    if !complex.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = complex.vertex_count();
    let adj = complex.neighbors();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut potential = vec![0i64; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    if n > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                potential[w] = potential[v] + xi.value(v, w).ok_or(Error::MissingEdgeValue([v.min(w), v.max(w)]))?;
                queue.push_back(w);
            }
        }
    }
    let non_tree = complex
        .simplices(1)
        .iter()
        .map(|e| (e[0], e[1]))
        .filter(|&(i, j)| parent[j] != Some(i) && parent[i] != Some(j))
        .collect();
    Ok(SpanningTree {
        parent,
        depth,
        potential,
        non_tree,
    })
}

impl SpanningTree {
    fn period(&self, xi: &IntegralCocycle, i: usize, j: usize) -> i64 {
        self.potential[i] + xi.at(i, j) - self.potential[j]
    }

    // closed walk i -> j along the edge, then back to i through the tree
    fn fundamental_loop(&self, i: usize, j: usize) -> Vec<usize> {
        let (mut a, mut b) = (i, j);
        let (mut up, mut down) = (vec![a], vec![b]);
        while a != b {
            if self.depth[a] >= self.depth[b] {
                a = self.parent[a].expect("tree path");
                up.push(a);
            } else {
                b = self.parent[b].expect("tree path");
                down.push(b);
            }
        }
        // up: i .. lca, down: j .. lca
        let mut path: Vec<usize> = up.into_iter().rev().collect();
        down.pop();
        path.extend(down);
        path.push(*path.first().expect("non-empty"));
        path
    }
}

/// Non-negative generator of the period group of `xi` on a connected complex.
pub fn periods(complex: &SimplicialComplex, xi: &IntegralCocycle) -> Result<u64> {
    let tree = spanning_tree(complex, xi)?;
    Ok(tree
        .non_tree
        .iter()
        .map(|&(i, j)| tree.period(xi, i, j).unsigned_abs())
        .fold(0u64, |g, p| g.gcd(&p)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Vertex potential `f` with `f(j) - f(i) = xi(ij)` and `f(0) = 0`.
    Exact(Vec<i64>),
    /// A closed walk with nonzero integral.
    NotExact { witness: Vec<usize>, integral: i64 },
}

pub fn exactness_witness(complex: &SimplicialComplex, xi: &IntegralCocycle) -> Result<Exactness> {
    let tree = spanning_tree(complex, xi)?;
    for &(i, j) in &tree.non_tree {
        let p = tree.period(xi, i, j);
        if p != 0 {
            let lp = tree.fundamental_loop(i, j);
            let integral = xi.integrate(&lp)?;
            return Ok(Exactness::NotExact { witness: lp, integral });
        }
    }
    Ok(Exactness::Exact(tree.potential))
}

/// Splits `xi = lambda * eta + (exact)` with `eta` indivisible.
///
/// When every edge value is already divisible by `lambda` the quotient is
/// returned unchanged; otherwise the tree potential is subtracted first.
pub fn divisibility(complex: &SimplicialComplex, xi: &IntegralCocycle) -> Result<(u64, IntegralCocycle)> {
    let g = periods(complex, xi)?;
    if g == 0 {
        return Err(Error::ExactClass);
    }
    let lambda = g as i64;
    if xi.entries().all(|(_, v)| v % lambda == 0) {
        let values = xi.values.iter().map(|(&e, &v)| (e, v / lambda)).collect();
        return Ok((g, IntegralCocycle { values }));
    }
    let tree = spanning_tree(complex, xi)?;
    let corrected = xi.sub(&IntegralCocycle::coboundary_of(complex, &tree.potential));
    let values = corrected
        .values
        .iter()
        .map(|(&e, &v)| {
            debug_assert_eq!(v % lambda, 0);
            (e, v / lambda)
        })
        .collect();
    Ok((g, IntegralCocycle { values }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(values: [i64; 3]) -> (SimplicialComplex, IntegralCocycle) {
        let c = SimplicialComplex::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let mut xi = IntegralCocycle::new();
        xi.set(0, 1, values[0]);
        xi.set(1, 2, values[1]);
        xi.set(0, 2, values[2]);
        (c, xi)
    }

    fn triangle(values: [i64; 3]) -> (SimplicialComplex, IntegralCocycle) {
        let (_, xi) = circle(values);
        (SimplicialComplex::from_simplices(3, &[vec![0, 1, 2]]).unwrap(), xi)
    }

    #[test]
    fn validation_examples() {
        let (c, xi) = circle([1, 0, 0]);
        assert!(validate_cocycle(&c, &xi).unwrap().ok);
        let (t, xi) = triangle([1, 1, 2]);
        assert!(validate_cocycle(&t, &xi).unwrap().ok);
        let (t, xi) = triangle([1, 1, 0]);
        let report = validate_cocycle(&t, &xi).unwrap();
        assert!(!report.ok);
        assert_eq!(report.violations, vec![[0, 1, 2]]);
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"ok":false,"violations":[[0,1,2]]}"#
        );
    }

    #[test]
    fn missing_edge_value_is_an_error() {
        let (c, _) = circle([0, 0, 0]);
        let mut xi = IntegralCocycle::new();
        xi.set(0, 1, 1);
        assert!(matches!(validate_cocycle(&c, &xi), Err(Error::MissingEdgeValue(_))));
    }

    #[test]
    fn line_integrals() {
        let (_, xi) = circle([1, 0, 0]);
        assert_eq!(integrate_path(&xi, &[0]).unwrap(), 0);
        assert_eq!(integrate_path(&xi, &[0, 1, 2, 0]).unwrap(), 1);
        assert_eq!(integrate_path(&xi, &[0, 2, 1, 0]).unwrap(), -1);
        let c = SimplicialComplex::from_simplices(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let xi = IntegralCocycle::zero_on(&c);
        assert!(matches!(integrate_path(&xi, &[0, 2]), Err(Error::NotAdjacent(0, 2))));
    }

    #[test]
    fn period_generators() {
        let (c, xi) = circle([1, 0, 0]);
        assert_eq!(periods(&c, &xi).unwrap(), 1);
        assert_eq!(periods(&c, &xi.scaled(3)).unwrap(), 3);
        let exact = IntegralCocycle::coboundary_of(&c, &[4, -1, 7]);
        assert_eq!(periods(&c, &exact).unwrap(), 0);
        let two = SimplicialComplex::from_simplices(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            periods(&two, &IntegralCocycle::zero_on(&two)),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn exactness_examples() {
        let (c, xi) = circle([0, 0, 0]);
        assert_eq!(exactness_witness(&c, &xi).unwrap(), Exactness::Exact(vec![0, 0, 0]));
        let (c, xi) = circle([1, 1, 2]);
        assert_eq!(exactness_witness(&c, &xi).unwrap(), Exactness::Exact(vec![0, 1, 2]));
        let (c, xi) = circle([1, 0, 0]);
        assert_eq!(
            exactness_witness(&c, &xi).unwrap(),
            Exactness::NotExact {
                witness: vec![0, 1, 2, 0],
                integral: 1
            }
        );
    }

    #[test]
    fn divisibility_examples() {
        let (c, xi) = circle([1, 0, 0]);
        assert_eq!(divisibility(&c, &xi).unwrap(), (1, xi.clone()));
        assert_eq!(divisibility(&c, &xi.scaled(3)).unwrap(), (3, xi.clone()));
        // mixed values with period 2: 3 + 1 - 2 = 2 around the loop
        let (c, xi) = circle([3, 1, 2]);
        let (lambda, eta) = divisibility(&c, &xi).unwrap();
        assert_eq!(lambda, 2);
        assert_eq!(periods(&c, &eta).unwrap(), 1);
        assert_eq!(periods(&c, &xi.sub(&eta.scaled(2))).unwrap(), 0);
        assert!(matches!(
            divisibility(&c, &IntegralCocycle::zero_on(&c)),
            Err(Error::ExactClass)
        ));
    }
}
