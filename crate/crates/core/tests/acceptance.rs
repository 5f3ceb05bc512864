//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use twistcon::freenil::{build_free_nilpotent, hall_basis, witt_rank, FreeNilpotent};
use twistcon::oracle::{brute_force_reidemeister, DEFAULT_MAX_ORDER};
use twistcon::pc::{parse_presentation, write_presentation, GroupMap, PcElement, PcPresentation};
use twistcon::twisted::{
    fix_subgroup, formanek_fixed, infinity_witness_uc, random_automorphism, reidemeister, reidemeister_abelian,
    reidemeister_layered, spectrum_sample, theorem2_rinf, ReidemeisterResult, SpectrumValue, Tower,
};

type Outcome = Result<String, String>;

/// Finite results collected for the partition criterion.
#[derive(Default)]
struct Finite {
    cases: Vec<(String, GroupMap, Vec<PcElement>)>,
}

impl Finite {
    fn record(&mut self, label: String, phi: &GroupMap, r: &ReidemeisterResult) {
        if let ReidemeisterResult::Finite { .. } = r {
            self.cases.push((label, phi.clone(), r.representatives()));
        }
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    if e > limit {
        Err(format!("{what} took {e:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn abelian_formula() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut finite, mut infinite) = (0, 0);
    for k in 0..200 {
        let n = 2 + k % 3;
        let m = random_gl(&mut rng, n, 5);
        let d = det(&minus_identity(&m)).abs();
        let r = reidemeister_abelian(&vec![0; n], &m).map_err(|e| e.to_string())?;
        match (d, r.count()) {
            (0, None) => infinite += 1,
            (d, Some(c)) if d > 0 && c as i128 == d => finite += 1,
            (d, c) => return Err(format!("matrix {m:?}: |det(M-I)| = {d}, got {c:?}")),
        }
    }
    within(t, Duration::from_secs(5), "200 matrices")?;
    Ok(format!(
        "200/200 agree ({finite} finite, {infinite} infinite) in {:.2?}",
        t.elapsed()
    ))
}

fn oracle_equivalence(out: &mut Finite) -> Outcome {
    let t = Instant::now();
    let mut catalog: Vec<Arc<PcPresentation>> = (2..=30).map(cyclic).collect();
    catalog.extend((2..=7).map(cyclic_square));
    catalog.extend([2, 3, 5].map(heisenberg_mod));
    let mut checked = 0;
    for g in &catalog {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 0..20 {
            let phi = random_automorphism(g, &mut rng).map_err(|e| format!("{}: {e}", g.name()))?;
            let r = reidemeister(&phi).map_err(|e| e.to_string())?;
            let brute = brute_force_reidemeister(&phi, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
            let reps = r.representatives();
            if r.count() != Some(brute.count) {
                return Err(format!(
                    "{} sample {k} ({}): layered {:?}, brute force {}",
                    g.name(),
                    phi.image_words().join(", "),
                    r.count(),
                    brute.count
                ));
            }
            let mut orbits: Vec<usize> = reps.iter().map(|x| brute.orbit(x)).collect();
            orbits.sort_unstable();
            orbits.dedup();
            if orbits.len() != reps.len() {
                return Err(format!("{} sample {k}: representatives share an orbit", g.name()));
            }
            out.record(format!("{} sample {k}", g.name()), &phi, &r);
            checked += 1;
        }
    }
    within(t, Duration::from_secs(120), "oracle comparison")?;
    Ok(format!(
        "{checked} automorphisms over {} groups agree in {:.2?}",
        catalog.len(),
        t.elapsed()
    ))
}

fn histogram(samples: &[SpectrumValue]) -> String {
    let mut h: BTreeMap<SpectrumValue, usize> = BTreeMap::new();
    for v in samples {
        *h.entry(*v).or_default() += 1;
    }
    h.iter().map(|(v, n)| format!("{v}x{n}")).collect::<Vec<_>>().join(" ")
}

fn sampled(g: &Arc<PcPresentation>, n: usize, seed: u64, out: &mut Finite) -> Result<Vec<SpectrumValue>, String> {
    let samples = spectrum_sample(g, n, seed).map_err(|e| e.to_string())?;
    let mut values = Vec::new();
    for s in samples {
        let r = reidemeister(&s.map).map_err(|e| e.to_string())?;
        out.record(format!("{} sample {}", g.name(), s.index), &s.map, &r);
        values.push(s.value);
    }
    Ok(values)
}

fn spectrum_n22(out: &mut Finite) -> Outcome {
    let g = Arc::new(build_free_nilpotent(2, 2).map_err(|e| e.to_string())?);
    let values = sampled(&g, 100, 3, out)?;
    if let Some(v) = values
        .iter()
        .find(|v| matches!(v, SpectrumValue::Finite(n) if n % 2 != 0))
    {
        return Err(format!("odd value {v}"));
    }
    for (images, want) in [
        (&[&[0, 1, 0][..], &[1, 1, 0], &[0, 0, -1]], 2),
        (&[&[1, 1, 0][..], &[2, 1, 0], &[0, 0, -1]], 4),
    ] {
        let phi = automorphism(&g, images);
        let r = reidemeister(&phi).map_err(|e| e.to_string())?;
        if r.count() != Some(want) {
            return Err(format!(
                "{}: expected {want}, got {:?}",
                phi.image_words().join(", "),
                r.count()
            ));
        }
        out.record(format!("N2_2 R = {want}"), &phi, &r);
    }
    Ok(format!(
        "values {}; R = 2 and R = 4 witnesses verified",
        histogram(&values)
    ))
}

fn spectrum_n32(out: &mut Finite) -> Outcome {
    let g = Arc::new(build_free_nilpotent(3, 2).map_err(|e| e.to_string())?);
    let values = sampled(&g, 100, 4, out)?;
    if let Some(v) = values
        .iter()
        .find(|v| matches!(v, SpectrumValue::Finite(n) if n % 2 == 0 && n % 4 != 0))
    {
        return Err(format!("value {v} is neither odd nor divisible by 4"));
    }
    if !values.iter().any(|v| matches!(v, SpectrumValue::Finite(_))) {
        return Err("no finite values sampled".into());
    }
    Ok(format!("values {}", histogram(&values)))
}

fn z2_fullness(out: &mut Finite) -> Outcome {
    let g = free_abelian(2);
    for n in 1..=6i64 {
        // det [[1, 1], [n, 1 + n]] = 1 and det(M - I) = -n
        let cols = vec![vec![1, n], vec![1, 1 + n]];
        let phi = linear(&g, &cols);
        let r = reidemeister(&phi).map_err(|e| e.to_string())?;
        if r.count() != Some(n as usize) {
            return Err(format!("n = {n}: got {:?}", r.count()));
        }
        out.record(format!("Z2 n = {n}"), &phi, &r);
    }
    Ok("R = 1..6 realized".into())
}

fn predicates() -> Outcome {
    // true cells, written out by hand
    let fixed_cells: &[(usize, &[usize])] = &[
        (2, &[8, 12, 16, 20, 24, 28]),
        (3, &[12, 18, 24, 30]),
        (4, &[8, 16, 24]),
        (5, &[10, 20, 30]),
        (6, &[12, 24]),
    ];
    let rinf_from: &[(usize, usize)] = &[(2, 8), (3, 12), (4, 8), (5, 10), (6, 12)];
    let mut cells = 0;
    for r in 2..=6 {
        let fixed = fixed_cells.iter().find(|(x, _)| *x == r).expect("row").1;
        let from = rinf_from.iter().find(|(x, _)| *x == r).expect("row").1;
        for c in 1..=30 {
            if formanek_fixed(r, c) != fixed.contains(&c) {
                return Err(format!("formanek_fixed({r}, {c})"));
            }
            if theorem2_rinf(r, c) != (c >= from) {
                return Err(format!("theorem2_rinf({r}, {c})"));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells each match"))
}

fn uc_consistency() -> Outcome {
    let mut witnessed = 0;
    let mut total = 0;
    for (r, seed) in [(2, 5), (3, 6)] {
        let g = Arc::new(build_free_nilpotent(r, 2).map_err(|e| e.to_string())?);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let phi = random_automorphism(&g, &mut rng).map_err(|e| e.to_string())?;
            if infinity_witness_uc(&phi).map_err(|e| e.to_string())?.is_some() {
                witnessed += 1;
                if !reidemeister_layered(&phi).map_err(|e| e.to_string())?.is_infinite() {
                    return Err(format!("{}: witness but finite", phi.image_words().join(", ")));
                }
            }
            total += 1;
        }
    }
    Ok(format!("{witnessed} of {total} samples had a witness, all infinite"))
}

fn partition(finite: &Finite) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (label, phi, reps) in &finite.cases {
        let tower = Tower::new(phi).map_err(|e| e.to_string())?;
        check_partition(&tower, reps, &mut rng, 50).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!(
        "{} finite results checked in {:.2?}",
        finite.cases.len(),
        t.elapsed()
    ))
}

fn box_elements(g: &PcPresentation, bound: i64) -> Vec<PcElement> {
    let n = g.len();
    let mut out = Vec::new();
    let mut e = vec![-bound; n];
    loop {
        out.push(g.element(&e));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
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

fn fixed_subgroups() -> Outcome {
    let mut found = 0;
    for (c, seed) in [(2, 9), (3, 10)] {
        let g = Arc::new(build_free_nilpotent(2, c).map_err(|e| e.to_string())?);
        let elements = box_elements(&g, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let phi = random_automorphism(&g, &mut rng).map_err(|e| e.to_string())?;
            let fix = fix_subgroup(&phi).map_err(|e| e.to_string())?;
            if let Some(x) = fix.gens().iter().find(|x| phi.apply(x) != **x) {
                return Err(format!("generator {} not fixed", g.word_string(x)));
            }
            for x in &elements {
                if phi.apply(x) == *x {
                    found += 1;
                    if !fix.contains(&g, x) {
                        return Err(format!(
                            "{} fixed by {} but outside the subgroup",
                            g.word_string(x),
                            phi.image_words().join(", ")
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{found} fixed box elements, all inside"))
}

fn random_letters(rng: &mut impl Rng, r: usize) -> Vec<(usize, i64)> {
    let len = rng.gen_range(0..=6);
    (0..len)
        .map(|_| (rng.gen_range(0..r), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect()
}

fn free_nilpotent_builder() -> Outcome {
    let t = Instant::now();
    for r in 1..=4u64 {
        let b = hall_basis(r as usize, 6);
        for (w, &n) in b.weight_counts().iter().enumerate() {
            if n as u64 != witt_rank(r, w as u32 + 1) {
                return Err(format!("weight count r = {r}, w = {}", w + 1));
            }
        }
    }
    let mut equal = 0;
    for (r, c) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 8)] {
        let g = build_free_nilpotent(r, c).map_err(|e| e.to_string())?;
        parse_presentation(&write_presentation(&g)).map_err(|e| format!("N{r}_{c} round trip: {e}"))?;
        let magnus = FreeNilpotent::<i128>::new(r, c).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let u = random_letters(&mut rng, r);
            let v = if rng.gen_bool(0.5) {
                random_letters(&mut rng, r)
            } else {
                // same element after free reduction
                let mut v = u.clone();
                let i = rng.gen_range(0..=v.len());
                let x = rng.gen_range(0..r);
                v.splice(i..i, [(x, 1), (x, -1)]);
                v
            };
            let (su, sv) = (
                magnus.image(&u).map_err(|e| e.to_string())?,
                magnus.image(&v).map_err(|e| e.to_string())?,
            );
            let (pu, pv) = (g.evaluate(&u), g.evaluate(&v));
            if (su == sv) != (pu == pv) {
                return Err(format!("N{r}_{c}: {u:?} vs {v:?} disagree"));
            }
            let coords = magnus.malcev_coordinates(&su).map_err(|e| e.to_string())?;
            if coords != pu.exponents() {
                return Err(format!("N{r}_{c}: coordinates of {u:?}"));
            }
            equal += usize::from(pu == pv);
        }
    }
    within(t, Duration::from_secs(180), "builder checks")?;
    Ok(format!(
        "5 groups consistent, Witt counts match, 2500 pairs agree ({equal} equal) in {:.2?}",
        t.elapsed()
    ))
}

fn main() {
    let mut finite = Finite::default();
    let results: Vec<(&str, Outcome)> = vec![
        ("abelian formula", abelian_formula()),
        ("oracle equivalence", oracle_equivalence(&mut finite)),
        ("N2_2 spectrum even", spectrum_n22(&mut finite)),
        ("N3_2 spectrum odd or 0 mod 4", spectrum_n32(&mut finite)),
        ("Z2 spectrum 1..6", z2_fullness(&mut finite)),
        ("classification predicates", predicates()),
        ("upper central witness implies infinite", uc_consistency()),
        ("partition and witnesses", partition(&finite)),
        ("fixed subgroups", fixed_subgroups()),
        ("free nilpotent builder", free_nilpotent_builder()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("[PASS] {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
