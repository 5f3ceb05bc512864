/// One basic commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub weight: usize,
    /// `Some((u, v))` for `[u, v]`, `None` for a free generator.
    pub parts: Option<(usize, usize)>,
    pub name: String,
}

/// Basic commutators through weight `c` on `r` letters.
///
/// Ordering: by weight, and within a weight by the index pair `(u, v)`.
/// `[u, v]` is admitted when `u > v` and, if `u = [x, y]`, also `y ≤ v`.
/// Generators are named `a1 … ar`; the commutators `c1, c2, …` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallBasis {
    pub rank: usize,
    pub class: usize,
    pub elements: Vec<HallElement>,
}

impl HallBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.weight).collect()
    }

    /// Number of elements of each weight `1..=c`.
    pub fn weight_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class];
        for e in &self.elements {
            counts[e.weight - 1] += 1;
        }
        counts
    }

    /// Bracket expression in terms of the free generators.
    pub fn expression(&self, k: usize) -> String {
        match self.elements[k].parts {
            None => self.elements[k].name.clone(),
            Some((u, v)) => format!("[{},{}]", self.expression(u), self.expression(v)),
        }
    }
}

pub fn hall_basis(r: usize, c: usize) -> HallBasis {
    let mut elements: Vec<HallElement> = (0..r)
        .map(|i| HallElement {
            weight: 1,
            parts: None,
            name: format!("a{}", i + 1),
        })
        .collect();
    if c == 0 {
        elements.clear();
    }
    let mut commutators = 0;
    for w in 2..=c {
        let existing = elements.len();
        let mut fresh = Vec::new();
        for u in 0..existing {
            for v in 0..u {
                if elements[u].weight + elements[v].weight != w {
                    continue;
                }
                if let Some((_, y)) = elements[u].parts {
                    if y > v {
                        continue;
                    }
                }
                commutators += 1;
                fresh.push(HallElement {
                    weight: w,
                    parts: Some((u, v)),
                    name: format!("c{commutators}"),
                });
            }
        }
        elements.extend(fresh);
    }
    HallBasis {
        rank: r,
        class: c,
        elements,
    }
}

/// Necklace count `(1/w)·Σ_{d | w} μ(d)·r^{w/d}`, the rank of the weight-`w`
/// layer of the free Lie ring on `r` generators.
pub fn witt_rank(r: u64, w: u32) -> u64 {
    assert!(w >= 1);
    let mut total: i128 = 0;
    for d in 1..=w {
        if !w.is_multiple_of(d) {
            continue;
        }
        let mu = mobius(d) as i128;
        if mu != 0 {
            total += mu * (r as i128).pow(w / d);
        }
    }
    (total / w as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_class_two() {
        let b = hall_basis(2, 2);
        assert_eq!(b.weights(), vec![1, 1, 2]);
        assert_eq!(b.expression(2), "[a2,a1]");
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_rank(2, 1), 2);
        assert_eq!(witt_rank(2, 3), 2);
        assert_eq!(witt_rank(2, 4), 3);
        assert_eq!(hall_basis(2, 3).weight_counts(), vec![2, 1, 2]);
        assert_eq!(hall_basis(3, 2).weight_counts(), vec![3, 3]);
    }

    #[test]
    fn counts_match_witt() {
        for r in 1..=4 {
            let b = hall_basis(r, 6);
            for (w, &n) in b.weight_counts().iter().enumerate() {
                assert_eq!(n as u64, witt_rank(r as u64, w as u32 + 1), "r={r} w={}", w + 1);
            }
        }
    }

    #[test]
    fn n28_has_71_generators() {
        assert_eq!(hall_basis(2, 8).len(), 71);
        assert_eq!(hall_basis(3, 5).len(), 80);
    }
}
