//! Brute-force checks by the definition: orbit enumeration of
//! `g ↦ (xφ)⁻¹·g·x` in finite groups and bounded witness search.

use std::collections::HashMap;

use crate::pc::{GroupMap, PcElement, PcPresentation};

pub const DEFAULT_MAX_ORDER: u128 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("group is infinite")]
    Infinite,
    #[error("group has {order} elements, above the bound {bound}")]
    TooLarge { order: u128, bound: u128 },
}

/// Every element of a finite pc group, indexed by normal form.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    elements: Vec<PcElement>,
    index: HashMap<PcElement, usize>,
}

impl FiniteGroupTable {
    pub fn new(g: &PcPresentation, bound: u128) -> Result<Self, OracleError> {
        let order = g.order().ok_or(OracleError::Infinite)?;
        if order > bound {
            return Err(OracleError::TooLarge { order, bound });
        }
        let orders: Vec<i64> = g.relative_orders().iter().map(|o| o.expect("finite")).collect();
        let mut elements = Vec::with_capacity(order as usize);
        let mut e = vec![0i64; g.len()];
        loop {
            elements.push(PcElement::from(e.clone()));
            let mut k = g.len();
            loop {
                if k == 0 {
                    let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
                    return Ok(FiniteGroupTable { elements, index });
                }
                k -= 1;
                e[k] += 1;
                if e[k] < orders[k] {
                    break;
                }
                e[k] = 0;
            }
        }
    }

    pub fn elements(&self) -> &[PcElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &PcElement) -> Option<usize> {
        self.index.get(x).copied()
    }
}

/// Twisted classes of `φ` as a partition of the element table.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub table: FiniteGroupTable,
    /// Orbit number of each element, orbits numbered by first element.
    pub orbit_of: Vec<usize>,
    pub count: usize,
}

impl OrbitPartition {
    pub fn orbit(&self, x: &PcElement) -> usize {
        self.orbit_of[self.table.position(x).expect("element of the table")]
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of `g ↦ (xφ)⁻¹·g·x`. The action of a product is the composite of
/// actions, so generator actions suffice.
pub fn brute_force_reidemeister(phi: &GroupMap, bound: u128) -> Result<OrbitPartition, OracleError> {
    let g = phi.source();
    let table = FiniteGroupTable::new(g, bound)?;
    let n = table.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..g.len() {
        let x = g.generator(i);
        let left = g.inv(&phi.apply(&x));
        for (k, y) in table.elements().iter().enumerate() {
            let z = g.mul(&left, &g.mul(y, &x));
            let j = table.position(&z).expect("closed under multiplication");
            let (a, b) = (find(&mut parent, k), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = HashMap::new();
    let orbit_of: Vec<usize> = (0..n)
        .map(|k| {
            let root = find(&mut parent, k);
            let next = label.len();
            *label.entry(root).or_insert(next)
        })
        .collect();
    Ok(OrbitPartition {
        count: label.len(),
        table,
        orbit_of,
    })
}

/// First `x` with exponents in `[-bound, bound]` (lexicographic, last
/// coordinate fastest) such that `(xφ)·g = f·x`.
pub fn bounded_witness_search(phi: &GroupMap, g: &PcElement, f: &PcElement, bound: i64) -> Option<PcElement> {
    let grp = phi.source();
    let n = grp.len();
    let mut e = vec![-bound; n];
    loop {
        let x = grp.element(&e);
        if grp.mul(&phi.apply(&x), g) == grp.mul(f, &x) {
            return Some(x);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            e[k] += 1;
            if e[k] <= bound {
                break;
            }
            e[k] = -bound;
        }
    }
}
