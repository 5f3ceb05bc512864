use std::fmt::Write as _;

use super::element::{invert_word, PcElement, Word};
use super::PcError;

/// A consistent power-conjugate presentation of a finitely generated
/// nilpotent group.
///
/// Conjugation relations read `g_i⁻¹·g_j·g_i = g_j·w` for `i < j` with `w` a
/// word in generators after `j`; power relations read `g_i^{m_i} = w` with `w`
/// in generators after `i`. The generating sequence refines the lower
/// central series: generators of weight `w` form a contiguous block and,
/// together with everything after them, generate `γ_w`.
#[derive(Clone, Debug)]
pub struct PcPresentation {
    name: String,
    gen_names: Vec<String>,
    orders: Vec<Option<i64>>,
    conj: Vec<Vec<Word>>,
    conj_inv: Vec<Vec<Word>>,
    commutes: Vec<Vec<bool>>,
    pow: Vec<Option<Word>>,
    weights: Vec<usize>,
    layer_starts: Vec<usize>,
}

/// Relations in the form accepted by [`PcPresentation::new`].
#[derive(Clone, Debug, Default)]
pub struct Relations {
    /// `((j, i), rhs)` meaning `g_i⁻¹·g_j·g_i = rhs`, `i < j`.
    pub conj: Vec<((usize, usize), Word)>,
    /// `(i, rhs)` meaning `g_i^{m_i} = rhs`.
    pub pow: Vec<(usize, Word)>,
}

impl PcPresentation {
    /// Validates and assembles a presentation, inferring generator weights
    /// from the lower central series.
    pub fn new(
        name: impl Into<String>,
        gen_names: Vec<String>,
        orders: Vec<Option<i64>>,
        relations: Relations,
    ) -> Result<Self, PcError> {
        let mut g = Self::assemble(name.into(), gen_names, orders, relations)?;
        g.check_consistency()?;
        let weights = super::series::infer_weights(&g)?;
        g.set_weights(weights);
        Ok(g)
    }

    /// Like [`new`](Self::new) but with caller-supplied weights, which are
    /// checked against the relations instead of recomputed: every
    /// conjugation tail must have weight at least `w_i + w_j`.
    pub fn with_weights(
        name: impl Into<String>,
        gen_names: Vec<String>,
        orders: Vec<Option<i64>>,
        relations: Relations,
        weights: Vec<usize>,
    ) -> Result<Self, PcError> {
        let mut g = Self::assemble(name.into(), gen_names, orders, relations)?;
        if weights.len() != g.len()
            || weights.windows(2).any(|w| w[0] > w[1])
            || weights.first().is_some_and(|&w| w != 1)
        {
            return Err(PcError::NotRefined(
                "weights must start at 1 and be non-decreasing".into(),
            ));
        }
        for j in 0..g.len() {
            for i in 0..j {
                let need = weights[i] + weights[j];
                if let Some(&(k, _)) = g.conj[j][i].iter().skip(1).find(|&&(k, _)| weights[k] < need) {
                    return Err(PcError::NotRefined(format!(
                        "conjugate of {} by {} involves {} of weight {} < {}",
                        g.gen_names[j], g.gen_names[i], g.gen_names[k], weights[k], need
                    )));
                }
            }
        }
        g.check_consistency()?;
        g.set_weights(weights);
        Ok(g)
    }

    fn assemble(
        name: String,
        gen_names: Vec<String>,
        orders: Vec<Option<i64>>,
        relations: Relations,
    ) -> Result<Self, PcError> {
        let n = gen_names.len();
        if orders.len() != n {
            return Err(PcError::Structure(format!(
                "{} generators but {} relative orders",
                n,
                orders.len()
            )));
        }
        for (k, name) in gen_names.iter().enumerate() {
            if gen_names[..k].contains(name) {
                return Err(PcError::Structure(format!("duplicate generator `{name}`")));
            }
        }
        if let Some(k) = orders.iter().position(|o| o.is_some_and(|m| m < 2)) {
            return Err(PcError::Structure(format!(
                "relative order of `{}` must be 0 (infinite) or at least 2",
                gen_names[k]
            )));
        }
        let mut conj: Vec<Vec<Word>> = (0..n).map(|j| (0..j).map(|_| vec![(j, 1)]).collect()).collect();
        let mut seen = vec![vec![false; n]; n];
        for ((j, i), rhs) in relations.conj {
            if i >= j || j >= n {
                return Err(PcError::Structure(format!(
                    "conjugation relation must conjugate a later generator by an earlier one (got {j}, {i})"
                )));
            }
            if seen[j][i] {
                return Err(PcError::Structure(format!(
                    "duplicate conjugation relation for ({}, {})",
                    gen_names[j], gen_names[i]
                )));
            }
            seen[j][i] = true;
            let rhs: Word = rhs.into_iter().filter(|&(_, e)| e != 0).collect();
            if rhs.first() != Some(&(j, 1)) || rhs.iter().skip(1).any(|&(k, _)| k <= j) {
                return Err(PcError::NotNilpotent(format!(
                    "{}^{} must equal {} times a word in later generators",
                    gen_names[j], gen_names[i], gen_names[j]
                )));
            }
            check_normal_word(&rhs, &orders, &gen_names)?;
            conj[j][i] = rhs;
        }
        let mut pow: Vec<Option<Word>> = orders.iter().map(|o| o.map(|_| Vec::new())).collect();
        let mut seen_pow = vec![false; n];
        for (i, rhs) in relations.pow {
            if i >= n || orders[i].is_none() {
                return Err(PcError::Structure(format!(
                    "power relation for a generator of infinite order (`{}`)",
                    gen_names.get(i).map_or("?", String::as_str)
                )));
            }
            if seen_pow[i] {
                return Err(PcError::Structure(format!(
                    "duplicate power relation for `{}`",
                    gen_names[i]
                )));
            }
            seen_pow[i] = true;
            let rhs: Word = rhs.into_iter().filter(|&(_, e)| e != 0).collect();
            if rhs.iter().any(|&(k, _)| k <= i) {
                return Err(PcError::NotNilpotent(format!(
                    "power of `{}` must be a word in later generators",
                    gen_names[i]
                )));
            }
            check_normal_word(&rhs, &orders, &gen_names)?;
            pow[i] = Some(rhs);
        }
        let commutes = (0..n)
            .map(|j| (0..j).map(|i| conj[j][i].len() == 1).collect())
            .collect();
        let mut g = PcPresentation {
            name,
            gen_names,
            orders,
            conj,
            conj_inv: (0..n).map(|j| (0..j).map(|_| vec![(j, 1)]).collect()).collect(),
            commutes,
            pow,
            weights: vec![1; n],
            layer_starts: vec![0, n],
        };
        g.derive_inverse_conjugates();
        Ok(g)
    }

    /// Fills in `g_i·g_j·g_i⁻¹` from the given `g_i⁻¹·g_j·g_i`, working from
    /// the end of the sequence so that every collection stays inside a tail
    /// whose relations are already complete.
    fn derive_inverse_conjugates(&mut self) {
        let n = self.len();
        for i in (0..n).rev() {
            for j in (i + 1..n).rev() {
                if self.commutes[j][i] {
                    continue;
                }
                // g_i⁻¹ g_j g_i = g_j t  ⇒  g_i g_j g_i⁻¹ = g_j · g_i t⁻¹ g_i⁻¹
                let t: Word = self.conj[j][i][1..].to_vec();
                let mut tv = vec![0; n];
                self.collect(&mut tv, &t);
                let t_inv = self.invert_exponents(&PcElement(tv));
                let mut out = vec![0; n];
                out[j] = 1;
                for (l, e) in t_inv.to_word() {
                    let w = &self.conj_inv[l][i];
                    let piece: Word = if e > 0 {
                        w.iter().copied().cycle().take(w.len() * e as usize).collect()
                    } else {
                        let wi = invert_word(w);
                        wi.iter().copied().cycle().take(wi.len() * (-e) as usize).collect()
                    };
                    self.collect(&mut out, &piece);
                }
                self.conj_inv[j][i] = PcElement(out).to_word();
            }
        }
    }

    pub(crate) fn set_weights(&mut self, weights: Vec<usize>) {
        let n = self.len();
        let class = weights.last().copied().unwrap_or(0);
        let mut starts = Vec::with_capacity(class + 1);
        for w in 1..=class {
            starts.push(weights.iter().position(|&x| x >= w).unwrap_or(n));
        }
        starts.push(n);
        self.weights = weights;
        self.layer_starts = starts;
    }

    /// Runs the standard overlap tests; the first failing overlap is reported.
    fn check_consistency(&self) -> Result<(), PcError> {
        let n = self.len();
        let gen = |i: usize| PcElement::generator(n, i);
        let name = |i: usize| self.gen_names[i].as_str();
        let fail = |s: String| Err(PcError::Inconsistent(s));
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.mul(&self.mul(&gen(k), &gen(j)), &gen(i));
                    let right = self.mul(&gen(k), &self.mul(&gen(j), &gen(i)));
                    if left != right {
                        return fail(format!("({} {}) {}", name(k), name(j), name(i)));
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if let Some(m) = self.orders[j] {
                    let mut p = vec![0; n];
                    p[j] = m - 1;
                    let p = PcElement(p);
                    let left = self.mul(&self.mul(&p, &gen(j)), &gen(i));
                    let right = self.mul(&p, &self.mul(&gen(j), &gen(i)));
                    if left != right {
                        return fail(format!("({}^{} {}) {}", name(j), m, name(j), name(i)));
                    }
                }
                if let Some(m) = self.orders[i] {
                    let mut p = vec![0; n];
                    p[i] = m - 1;
                    let p = PcElement(p);
                    let left = self.mul(&self.mul(&gen(j), &p), &gen(i));
                    let right = self.mul(&gen(j), &self.mul(&p, &gen(i)));
                    if left != right {
                        return fail(format!("({} {}^{}) {}", name(j), name(i), m - 1, name(i)));
                    }
                }
                let gi_inv = self.inv(&gen(i));
                let back = self.mul(&self.mul(&gen(j), &gi_inv), &gen(i));
                if back != gen(j) {
                    return fail(format!("({} {}^-1) {}", name(j), name(i), name(i)));
                }
                let gj_inv = self.inv(&gen(j));
                let back = self.mul(&gj_inv, &self.mul(&gen(j), &gen(i)));
                if back != gen(i) {
                    return fail(format!("{}^-1 ({} {})", name(j), name(j), name(i)));
                }
            }
        }
        for i in 0..n {
            if let Some(m) = self.orders[i] {
                let mut p = vec![0; n];
                p[i] = m - 1;
                let p = PcElement(p);
                let left = self.mul(&self.mul(&gen(i), &p), &gen(i));
                let right = self.mul(&gen(i), &self.mul(&p, &gen(i)));
                if left != right {
                    return fail(format!("({} {}^{}) {}", name(i), name(i), m - 1, name(i)));
                }
            }
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // accessors

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.gen_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gen_names.is_empty()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|g| g == name)
    }

    /// Relative orders, `None` for infinite.
    pub fn relative_orders(&self) -> &[Option<i64>] {
        &self.orders
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Nilpotency class (number of weight layers).
    pub fn class(&self) -> usize {
        self.layer_starts.len() - 1
    }

    /// Generator index range of weight `w` (1-based).
    pub fn layer(&self, w: usize) -> std::ops::Range<usize> {
        self.layer_starts[w - 1]..self.layer_starts[w]
    }

    /// First generator index of weight `w`; the sequence length past the class.
    pub fn layer_start(&self, w: usize) -> usize {
        self.layer_starts.get(w - 1).copied().unwrap_or(self.len())
    }

    /// Number of infinite relative orders.
    pub fn hirsch_length(&self) -> usize {
        self.orders.iter().filter(|o| o.is_none()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(Option::is_some)
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<u128> {
        self.orders
            .iter()
            .try_fold(1u128, |acc, o| o.and_then(|m| acc.checked_mul(m as u128)))
    }

    /// `g_i⁻¹·g_j·g_i` for `i < j`.
    pub fn conjugate_relation(&self, j: usize, i: usize) -> &Word {
        &self.conj[j][i]
    }

    /// `g_i^{m_i}` for generators of finite relative order.
    pub fn power_relation(&self, i: usize) -> Option<&Word> {
        self.pow[i].as_ref()
    }

    pub(crate) fn relations(&self) -> Relations {
        let n = self.len();
        let mut r = Relations::default();
        for j in 0..n {
            for i in 0..j {
                if !self.commutes[j][i] {
                    r.conj.push(((j, i), self.conj[j][i].clone()));
                }
            }
        }
        for i in 0..n {
            if let Some(w) = &self.pow[i] {
                if !w.is_empty() {
                    r.pow.push((i, w.clone()));
                }
            }
        }
        r
    }

    // ------------------------------------------------------------------
    // collection

    /// Multiplies the normal form `v` on the right by `word`, by collection
    /// from the left.
    pub(crate) fn collect(&self, v: &mut [i64], word: &[(usize, i64)]) {
        let n = self.len();
        let mut stack: Vec<(usize, i64)> = word.iter().rev().copied().collect();
        while let Some((i, e)) = stack.pop() {
            if e == 0 {
                continue;
            }
            let suffix_zero = v[i + 1..].iter().all(|&x| x == 0);
            let passes = suffix_zero || (i + 1..n).all(|j| v[j] == 0 || self.commutes[j][i]);
            if passes {
                let new = v[i] + e;
                match self.orders[i] {
                    None => {
                        v[i] = new;
                        continue;
                    }
                    Some(m) if (0..m).contains(&new) => {
                        v[i] = new;
                        continue;
                    }
                    Some(m) if suffix_zero => {
                        v[i] = new.rem_euclid(m);
                        let q = new.div_euclid(m);
                        let w = self.pow[i].as_ref().expect("finite generator has a power word");
                        push_power(&mut stack, w, q);
                        continue;
                    }
                    Some(_) => {}
                }
            }
            // one step: v·g_i^s = prefix · g_i^{v_i+s} · suffix^{g_i^s}
            let s = e.signum();
            stack.push((i, e - s));
            let table = if s > 0 { &self.conj } else { &self.conj_inv };
            let mut pending: Vec<(usize, i64)> = Vec::new();
            for j in i + 1..n {
                let ej = v[j];
                if ej == 0 {
                    continue;
                }
                v[j] = 0;
                if self.commutes[j][i] {
                    pending.push((j, ej));
                } else {
                    let w = &table[j][i];
                    if ej > 0 {
                        for _ in 0..ej {
                            pending.extend_from_slice(w);
                        }
                    } else {
                        let wi = invert_word(w);
                        for _ in 0..-ej {
                            pending.extend_from_slice(&wi);
                        }
                    }
                }
            }
            stack.extend(pending.into_iter().rev());
            stack.push((i, s));
        }
    }

    // ------------------------------------------------------------------
    // arithmetic

    pub fn identity(&self) -> PcElement {
        PcElement::identity(self.len())
    }

    pub fn generator(&self, i: usize) -> PcElement {
        PcElement::generator(self.len(), i)
    }

    /// Normal form of the product `∏ g_i^{e_i}` for arbitrary exponents.
    pub fn element(&self, exponents: &[i64]) -> PcElement {
        assert_eq!(exponents.len(), self.len(), "exponent vector length");
        let word: Word = exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| (g, e))
            .collect();
        self.evaluate(&word)
    }

    /// Normal form of a word in generator indices.
    pub fn evaluate(&self, word: &[(usize, i64)]) -> PcElement {
        let mut v = vec![0; self.len()];
        self.collect(&mut v, word);
        PcElement(v)
    }

    pub fn mul(&self, x: &PcElement, y: &PcElement) -> PcElement {
        let mut v = x.0.clone();
        self.collect(&mut v, &y.to_word());
        PcElement(v)
    }

    pub fn inv(&self, x: &PcElement) -> PcElement {
        self.invert_exponents(x)
    }

    fn invert_exponents(&self, x: &PcElement) -> PcElement {
        let word = invert_word(&x.to_word());
        self.evaluate(&word)
    }

    pub fn pow(&self, x: &PcElement, n: i64) -> PcElement {
        let mut base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `[x, y] = x⁻¹·y⁻¹·x·y`
    pub fn commutator(&self, x: &PcElement, y: &PcElement) -> PcElement {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&self.inv(&yx), &xy)
    }

    /// `x^y = y⁻¹·x·y`
    pub fn conjugate(&self, x: &PcElement, y: &PcElement) -> PcElement {
        self.mul(&self.inv(y), &self.mul(x, y))
    }

    /// Keeps the exponents of the first `len` generators, zeroing the rest.
    /// For a tail `T_len` this is the canonical section of the quotient map.
    pub fn truncate(&self, x: &PcElement, len: usize) -> PcElement {
        let mut v = x.0.clone();
        for e in v.iter_mut().skip(len) {
            *e = 0;
        }
        PcElement(v)
    }

    /// Renders an element as a word, `1` for the identity.
    pub fn word_string(&self, x: &PcElement) -> String {
        word_to_string(&x.to_word(), &self.gen_names)
    }
}

fn push_power(stack: &mut Vec<(usize, i64)>, w: &[(usize, i64)], q: i64) {
    if q > 0 {
        for _ in 0..q {
            stack.extend(w.iter().rev().copied());
        }
    } else {
        let wi = invert_word(w);
        for _ in 0..-q {
            stack.extend(wi.iter().rev().copied());
        }
    }
}

fn check_normal_word(w: &[(usize, i64)], orders: &[Option<i64>], names: &[String]) -> Result<(), PcError> {
    if w.windows(2).any(|p| p[0].0 >= p[1].0) {
        return Err(PcError::Structure(
            "relation right-hand sides must list generators in increasing order".into(),
        ));
    }
    for &(g, e) in w {
        if let Some(m) = orders[g] {
            if !(0..m).contains(&e) {
                return Err(PcError::Structure(format!(
                    "exponent {e} of `{}` outside [0, {m}) in a relation",
                    names[g]
                )));
            }
        }
    }
    Ok(())
}

/// `name^exp` tokens separated by spaces; `^1` omitted; `1` when empty.
pub fn word_to_string(w: &[(usize, i64)], names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    for (k, &(g, e)) in w.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        s.push_str(&names[g]);
        if e != 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}
