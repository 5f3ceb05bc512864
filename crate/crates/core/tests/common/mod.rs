#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use twistcon::intlat::Matrix;
use twistcon::pc::{check_map, parse_presentation, GroupMap, MapKind, PcElement, PcPresentation};
use twistcon::twisted::Tower;

pub fn group(text: &str) -> Arc<PcPresentation> {
    Arc::new(parse_presentation(text).unwrap())
}

pub fn cyclic(m: i64) -> Arc<PcPresentation> {
    group(&format!("pcgroup C{m}\ngens x\norders {m}\n"))
}

pub fn cyclic_square(m: i64) -> Arc<PcPresentation> {
    group(&format!("pcgroup C{m}xC{m}\ngens x y\norders {m} {m}\n"))
}

pub fn heisenberg_mod(p: i64) -> Arc<PcPresentation> {
    group(&format!(
        "pcgroup H{p}\ngens a b c\norders {p} {p} {p}\nconj b a = b c^{}\n",
        p - 1
    ))
}

pub fn heisenberg() -> Arc<PcPresentation> {
    group("pcgroup H\ngens a b c\norders 0 0 0\nconj b a = b c^-1\n")
}

pub fn free_abelian(n: usize) -> Arc<PcPresentation> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    group(&format!(
        "pcgroup Z{n}\ngens {}\norders {}\n",
        names.join(" "),
        vec!["0"; n].join(" ")
    ))
}

pub fn automorphism(g: &Arc<PcPresentation>, images: &[&[i64]]) -> GroupMap {
    let imgs = images.iter().map(|e| g.element(e)).collect();
    check_map(g, g, imgs, MapKind::Automorphism).unwrap()
}

/// Automorphism of a free abelian group from matrix columns.
pub fn linear(g: &Arc<PcPresentation>, columns: &[Vec<i64>]) -> GroupMap {
    let imgs = columns.iter().map(|c| g.element(c)).collect();
    check_map(g, g, imgs, MapKind::Automorphism).unwrap()
}

/// `n × n` integer matrix with entries in `[-bound, bound]` and determinant
/// `±1`, by rejection; returned as columns.
pub fn random_gl(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let d = det(&cols);
        if d == 1 || d == -1 {
            return cols;
        }
    }
}

/// Determinant by cofactor expansion along the first column.
pub fn det(cols: &[Vec<i64>]) -> i128 {
    let n = cols.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return cols[0][0] as i128;
    }
    let mut total = 0i128;
    for i in 0..n {
        let minor: Vec<Vec<i64>> = cols[1..]
            .iter()
            .map(|c| c.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x).collect())
            .collect();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        total += sign * cols[0][i] as i128 * det(&minor);
    }
    total
}

pub fn minus_identity(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    cols.iter()
        .enumerate()
        .map(|(j, c)| c.iter().enumerate().map(|(i, &x)| x - i64::from(i == j)).collect())
        .collect()
}

pub fn to_matrix(cols: &[Vec<i64>]) -> Matrix<i64> {
    Matrix::from_columns(cols.len(), cols)
}

pub fn random_element(g: &PcPresentation, rng: &mut impl Rng, bound: i64) -> PcElement {
    let e: Vec<i64> = (0..g.len()).map(|_| rng.gen_range(-bound..=bound)).collect();
    g.element(&e)
}

/// Checks that the representatives are pairwise inequivalent and that
/// `samples` random elements are each equivalent to exactly one of them,
/// every witness being verified directly.
pub fn check_partition(tower: &Tower, reps: &[PcElement], rng: &mut impl Rng, samples: usize) -> Result<(), String> {
    let g = tower.group();
    let phi = tower.map();
    let verify = |x: &PcElement, a: &PcElement, b: &PcElement| g.mul(&phi.apply(x), a) == g.mul(b, x);
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            if let Some(x) = tower.decide(a, b).map_err(|e| e.to_string())? {
                return Err(format!(
                    "representatives {} and {} are equivalent via {}",
                    g.word_string(a),
                    g.word_string(b),
                    g.word_string(&x)
                ));
            }
        }
    }
    for _ in 0..samples {
        let f = random_element(g, rng, 3);
        let mut hits = 0;
        for r in reps {
            if let Some(x) = tower.decide(r, &f).map_err(|e| e.to_string())? {
                if !verify(&x, r, &f) {
                    return Err(format!("witness {} fails", g.word_string(&x)));
                }
                hits += 1;
            }
        }
        if hits != 1 {
            return Err(format!("{} is equivalent to {hits} representatives", g.word_string(&f)));
        }
    }
    Ok(())
}
