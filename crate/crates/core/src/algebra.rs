//! The quantum group as a presented algebra: RTT relations, normal forms and
//! the Hopf structure maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rmatrix::{GroupKind, RMatrix, Series};
use crate::scalar::Scalar;

/// The generator `t^{a+1}_{b+1}` (indices stored 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub a: u8,
    pub b: u8,
}

impl Gen {
    pub fn new(a: usize, b: usize) -> Self {
        Gen { a: a as u8, b: b as u8 }
    }

    pub fn is_diagonal(self) -> bool {
        self.a == self.b
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{},{}]", self.a + 1, self.b + 1)
    }
}

/// A word in the generators, ordered by length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

/// Degree-lexicographic. For N = 2 the determinant relation then eliminates
/// `t[1,2]*t[2,1]`; the normal basis is `a^i b^j d^l` together with
/// `a^i c^k d^l`. Eliminating `t[1,1]*t[2,2]` instead leaves an incomplete
/// system (the overlap `t[1,1]*t[2,2]*t[1,2]` does not resolve).
fn rewrite_key(w: &Word) -> (usize, &[Gen]) {
    (w.len(), &w.0)
}

/// Writes `coeff * body` as a signed term of a sum.
pub(crate) fn fmt_term(out: &mut String, first: bool, coeff: &Scalar, body: Option<&str>) {
    let single = coeff.is_laurent() && coeff.numerator().num_terms() == 1;
    if single {
        let (e, c) = coeff.numerator().terms().next().map(|(e, c)| (e, c.clone())).unwrap();
        let neg = c < <crate::scalar::Rational as num_traits::Zero>::zero();
        let mag = Scalar::from_poly(crate::scalar::LaurentPoly::monomial(e, if neg { -c } else { c }));
        out.push_str(match (first, neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        match body {
            Some(b) if mag.is_one() => out.push_str(b),
            Some(b) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(b);
            }
            None => out.push_str(&mag.to_string()),
        }
    } else {
        if !first {
            out.push_str(" + ");
        }
        out.push('(');
        out.push_str(&coeff.to_string());
        out.push(')');
        if let Some(b) = body {
            out.push('*');
            out.push_str(b);
        }
    }
}

/// A linear combination of words. Elements returned by [`QuantumGroup`]
/// methods are in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Self::term(Word::empty(), s)
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: Word, s: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, s);
        e
    }

    pub fn add_term(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    /// The constant when the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }
}

impl std::ops::Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(o, &-Scalar::one());
        out
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body = (!w.is_empty()).then(|| w.to_string());
            fmt_term(&mut out, i == 0, c, body.as_deref());
        }
        f.write_str(&out)
    }
}

/// Element of `A ⊗ A` with both legs normal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, l: Word, r: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let key = (l, r);
        let v = self.terms.entry(key.clone()).or_default();
        *v += &s;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `s · x ⊗ y`.
    pub fn add_product(&mut self, x: &AlgebraElement, y: &AlgebraElement, s: &Scalar) {
        for (lw, lc) in x.terms() {
            for (rw, rc) in y.terms() {
                self.add_term(lw.clone(), rw.clone(), &(lc * rc) * s);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(l.clone(), r.clone(), -c);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            let body = format!("{} (x) {}", l, r);
            fmt_term(&mut out, i == 0, c, Some(&body));
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: AlgebraElement,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

fn find_rule(rules: &[Rule], w: &Word) -> Option<(usize, usize)> {
    for pos in 0..w.len() {
        for (ri, r) in rules.iter().enumerate() {
            let l = r.lhs.len();
            if pos + l <= w.len() && w.0[pos..pos + l] == r.lhs.0[..] {
                return Some((pos, ri));
            }
        }
    }
    None
}

fn splice(w: &Word, pos: usize, len: usize, mid: &Word) -> Word {
    let mut v = Vec::with_capacity(w.len() - len + mid.len());
    v.extend_from_slice(&w.0[..pos]);
    v.extend_from_slice(&mid.0);
    v.extend_from_slice(&w.0[pos + len..]);
    Word(v)
}

/// Uncached reduction, used while the rule set is still being assembled.
fn reduce_with(rules: &[Rule], e: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    let mut todo: Vec<(Word, Scalar)> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    while let Some((w, c)) = todo.pop() {
        match find_rule(rules, &w) {
            None => out.add_term(w, c),
            Some((pos, ri)) => {
                let r = &rules[ri];
                for (mw, mc) in r.rhs.terms() {
                    todo.push((splice(&w, pos, r.lhs.len(), mw), &c * mc));
                }
            }
        }
    }
    out
}

/// The quantum group `A_R`: relations, normal form and Hopf maps.
pub struct QuantumGroup {
    r: RMatrix,
    rules: Vec<Rule>,
    antipode: Option<Vec<AlgebraElement>>,
    cache: RwLock<HashMap<Word, AlgebraElement>>,
}

impl fmt::Debug for QuantumGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumGroup")
            .field("n", &self.r.n())
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl QuantumGroup {
    pub fn new(r: RMatrix) -> Result<Self> {
        if r.series() == Series::BcdReserved {
            return Err(Error::Presentation("only the A series is implemented; B, C and D need the metric relations".into()));
        }
        let rules = derive_rules(&r)?;
        let mut qg = QuantumGroup {
            r,
            rules,
            antipode: None,
            cache: RwLock::new(HashMap::new()),
        };
        if qg.r.group() == GroupKind::SL {
            qg.antipode = Some(qg.solve_antipode()?);
        }
        Ok(qg)
    }

    pub fn rmatrix(&self) -> &RMatrix {
        &self.r
    }

    pub fn n(&self) -> usize {
        self.r.n()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn generators(&self) -> Vec<Gen> {
        let n = self.n();
        (0..n * n).map(|g| Gen::new(g / n, g % n)).collect()
    }

    /// `t[a,b]` with 1-based indices, range-checked.
    pub fn gen(&self, a: usize, b: usize) -> Result<AlgebraElement> {
        let n = self.n();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::UnknownSymbol(format!("t[{},{}]", a, b)));
        }
        Ok(AlgebraElement::from_word(Word(vec![Gen::new(a - 1, b - 1)])))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        find_rule(&self.rules, w).is_none()
    }

    pub fn normal_form_word(&self, w: &Word) -> AlgebraElement {
        if let Some(e) = self.cache.read().unwrap().get(w) {
            return e.clone();
        }
        let out = match find_rule(&self.rules, w) {
            None => AlgebraElement::from_word(w.clone()),
            Some((pos, ri)) => {
                let r = &self.rules[ri];
                let mut acc = AlgebraElement::zero();
                for (mw, mc) in r.rhs.terms() {
                    acc.add_scaled(&self.normal_form_word(&splice(w, pos, r.lhs.len(), mw)), mc);
                }
                acc
            }
        };
        self.cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    pub fn normal_form(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (xw, xc) in x.terms() {
            for (yw, yc) in y.terms() {
                out.add_scaled(&self.normal_form_word(&xw.concat(yw)), &(xc * yc));
            }
        }
        out
    }

    pub fn product(&self, factors: &[AlgebraElement]) -> AlgebraElement {
        factors.iter().fold(AlgebraElement::one(), |acc, f| self.mul(&acc, f))
    }

    /// Normal words of degree at most `max_deg`, in increasing order.
    pub fn normal_words(&self, max_deg: usize) -> Vec<Word> {
        let gens = self.generators();
        let mut layer = vec![Word::empty()];
        let mut all = layer.clone();
        for _ in 0..max_deg {
            let mut next = Vec::new();
            for w in &layer {
                for &g in &gens {
                    let mut v = w.0.clone();
                    v.push(g);
                    let nw = Word(v);
                    if self.is_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    /// All words of length at most `max_len`.
    pub fn all_words(&self, max_len: usize) -> Vec<Word> {
        let gens = self.generators();
        let mut layer = vec![Word::empty()];
        let mut all = layer.clone();
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    gens.iter().map(move |&g| {
                        let mut v = w.0.clone();
                        v.push(g);
                        Word(v)
                    })
                })
                .collect();
            all.extend(layer.iter().cloned());
        }
        all
    }

    /// First word of length at most `max_len` with a one-step reduct whose
    /// normal form differs from the word's own.
    pub fn confluence_violation(&self, max_len: usize) -> Option<(Word, Rule)> {
        for w in self.all_words(max_len) {
            let nf = self.normal_form_word(&w);
            for pos in 0..w.len() {
                for r in &self.rules {
                    let l = r.lhs.len();
                    if pos + l <= w.len() && w.0[pos..pos + l] == r.lhs.0[..] {
                        let mut alt = AlgebraElement::zero();
                        for (mw, mc) in r.rhs.terms() {
                            alt.add_scaled(&self.normal_form_word(&splice(&w, pos, l, mw)), mc);
                        }
                        if alt != nf {
                            return Some((w, r.clone()));
                        }
                    }
                }
            }
        }
        None
    }

    /// `Σ_σ (−q)^{ℓ(σ)} t^1_{σ1} ⋯ t^N_{σN}` in normal form.
    pub fn quantum_determinant(&self) -> AlgebraElement {
        self.normal_form(&raw_determinant(self.n()))
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        if w.0.iter().all(|g| g.is_diagonal()) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    pub fn counit(&self, x: &AlgebraElement) -> Scalar {
        x.terms()
            .filter(|(w, _)| w.0.iter().all(|g| g.is_diagonal()))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Index paths `c` for the iterated coproduct of a word: each letter
    /// `t^a_b` splits into `t^a_{c_1} ⊗ t^{c_1}_{c_2} ⊗ ⋯ ⊗ t^{c_{k-1}}_b`.
    fn split_word(&self, w: &Word, legs: usize, mut visit: impl FnMut(&[Word])) {
        let n = self.n();
        let k = w.len();
        let inner = legs - 1;
        let total = k * inner;
        let mut idx = vec![0usize; total];
        loop {
            let mut parts: Vec<Word> = vec![Word(Vec::with_capacity(k)); legs];
            for (i, g) in w.0.iter().enumerate() {
                let path = &idx[i * inner..(i + 1) * inner];
                let mut from = g.a as usize;
                for (leg, part) in parts.iter_mut().enumerate() {
                    let to = if leg < inner { path[leg] } else { g.b as usize };
                    part.0.push(Gen::new(from, to));
                    from = to;
                }
            }
            visit(&parts);
            let mut pos = 0;
            loop {
                if pos == total {
                    return;
                }
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn coproduct_word(&self, w: &Word) -> TensorElement {
        let mut out = TensorElement::zero();
        self.split_word(w, 2, |p| {
            out.add_product(&self.normal_form_word(&p[0]), &self.normal_form_word(&p[1]), &Scalar::one());
        });
        out
    }

    pub fn coproduct(&self, x: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            for (l, r, s) in self.coproduct_word(w).terms() {
                out.add_term(l.clone(), r.clone(), s * c);
            }
        }
        out
    }

    /// `(id ⊗ φ)φ(x)` as a list of triples.
    pub fn double_coproduct(&self, x: &AlgebraElement) -> Vec<(Word, Word, Word, Scalar)> {
        let mut acc: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        for (w, c) in x.terms() {
            self.split_word(w, 3, |p| {
                let (a, b, cc) = (
                    self.normal_form_word(&p[0]),
                    self.normal_form_word(&p[1]),
                    self.normal_form_word(&p[2]),
                );
                for (aw, ac) in a.terms() {
                    for (bw, bc) in b.terms() {
                        for (cw, ccf) in cc.terms() {
                            let v = acc.entry((aw.clone(), bw.clone(), cw.clone())).or_default();
                            *v += &(&(&(ac * bc) * ccf) * c);
                        }
                    }
                }
            });
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b, c), s)| (a, b, c, s))
            .collect()
    }

    /// `(φ ⊗ id)φ(x)`, for coassociativity checks.
    pub fn double_coproduct_left(&self, x: &AlgebraElement) -> Vec<(Word, Word, Word, Scalar)> {
        let mut acc: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        for (l, r, c) in self.coproduct(x).terms() {
            for (ll, lr, c2) in self.coproduct_word(l).terms() {
                let v = acc.entry((ll.clone(), lr.clone(), r.clone())).or_default();
                *v += &(c * c2);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b, c), s)| (a, b, c, s))
            .collect()
    }

    /// `(id ⊗ φ)φ(x)` computed leg by leg.
    pub fn double_coproduct_right(&self, x: &AlgebraElement) -> Vec<(Word, Word, Word, Scalar)> {
        let mut acc: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        for (l, r, c) in self.coproduct(x).terms() {
            for (rl, rr, c2) in self.coproduct_word(r).terms() {
                let v = acc.entry((l.clone(), rl.clone(), rr.clone())).or_default();
                *v += &(c * c2);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b, c), s)| (a, b, c, s))
            .collect()
    }

    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (xl, xr, xc) in x.terms() {
            for (yl, yr, yc) in y.terms() {
                let l = self.normal_form_word(&xl.concat(yl));
                let r = self.normal_form_word(&xr.concat(yr));
                out.add_product(&l, &r, &(xc * yc));
            }
        }
        out
    }

    /// Table of `κ(t^a_b)`, indexed `a·N + b`.
    pub fn antipode_table(&self) -> Result<&[AlgebraElement]> {
        self.antipode
            .as_deref()
            .ok_or_else(|| Error::Presentation("no antipode without the determinant relation (GL mode)".into()))
    }

    pub fn antipode_word(&self, w: &Word) -> Result<AlgebraElement> {
        let table = self.antipode_table()?;
        let n = self.n();
        let mut acc = AlgebraElement::one();
        for g in w.0.iter().rev() {
            acc = self.mul(&acc, &table[g.a as usize * n + g.b as usize]);
        }
        Ok(acc)
    }

    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.antipode_word(w)?, c);
        }
        Ok(out)
    }

    /// `ad(x) = Σ b ⊗ κ(a)c` over `(id ⊗ φ)φ(x) = Σ a ⊗ b ⊗ c`.
    pub fn adjoint(&self, x: &AlgebraElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (a, b, c, s) in self.double_coproduct(x) {
            let right = self.mul(&self.antipode_word(&a)?, &AlgebraElement::from_word(c));
            out.add_product(&AlgebraElement::from_word(b), &right, &s);
        }
        Ok(out)
    }

    /// Solves `Σ_g κ(t^a_g) t^g_b = δ^a_b` with `κ(t^a_g)` ranging over
    /// normal words of degree below N.
    fn solve_antipode(&self) -> Result<Vec<AlgebraElement>> {
        let n = self.n();
        let basis = self.normal_words(n - 1);
        let mut table = vec![AlgebraElement::zero(); n * n];
        for a in 0..n {
            // Unknown (g, u): coefficient of basis word u in κ(t^a_g).
            let unknowns: Vec<(usize, &Word)> = (0..n).flat_map(|g| basis.iter().map(move |u| (g, u))).collect();
            let mut rows: BTreeMap<(usize, Word), Vec<Scalar>> = BTreeMap::new();
            for b in 0..n {
                rows.entry((b, Word::empty()))
                    .or_insert_with(|| vec![Scalar::zero(); unknowns.len() + 1]);
                for (k, (g, u)) in unknowns.iter().enumerate() {
                    let prod = self.normal_form_word(&u.concat(&Word(vec![Gen::new(*g, b)])));
                    for (v, c) in prod.terms() {
                        let row = rows
                            .entry((b, v.clone()))
                            .or_insert_with(|| vec![Scalar::zero(); unknowns.len() + 1]);
                        row[k] += c;
                    }
                }
                let rhs = rows.get_mut(&(b, Word::empty())).unwrap();
                if a == b {
                    rhs[unknowns.len()] = Scalar::one();
                }
            }
            let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
            let m = Matrix::from_fn(rows.len(), unknowns.len(), |r, c| rows[r][c].clone());
            let rhs: Vec<Scalar> = rows.iter().map(|r| r[unknowns.len()].clone()).collect();
            let x = m
                .solve(&rhs)
                .ok_or_else(|| Error::Presentation(format!("no antipode solves row {} of the fundamental matrix", a + 1)))?;
            for (k, (g, u)) in unknowns.iter().enumerate() {
                table[a * n + g].add_term((*u).clone(), x[k].clone());
            }
        }
        Ok(table)
    }
}

/// `Σ_{ef} R^{ab}_{ef} t^f_d t^e_c − Σ_{ef} t^a_e t^b_f R^{ef}_{cd}` for all
/// `a,b,c,d`, as free-algebra elements.
pub fn rtt_relations(r: &RMatrix) -> Vec<AlgebraElement> {
    let n = r.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut e = AlgebraElement::zero();
                    for x in 0..n {
                        for y in 0..n {
                            e.add_term(Word(vec![Gen::new(y, d), Gen::new(x, c)]), r.get(a, b, x, y).clone());
                            e.add_term(Word(vec![Gen::new(a, x), Gen::new(b, y)]), -r.get(x, y, c, d));
                        }
                    }
                    out.push(e);
                }
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out
}

fn raw_determinant(n: usize) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    for p in permutations(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let coeff = Scalar::q_pow(inversions as i32);
        let coeff = if inversions % 2 == 1 { -coeff } else { coeff };
        e.add_term(Word((0..n).map(|i| Gen::new(i, p[i])).collect()), coeff);
    }
    e
}

fn leading(e: &AlgebraElement) -> Option<(&Word, &Scalar)> {
    e.terms().max_by(|x, y| rewrite_key(x.0).cmp(&rewrite_key(y.0)))
}

fn rule_from(e: &AlgebraElement) -> Result<Rule> {
    let (lw, lc) = leading(e).expect("nonzero relation");
    if lw.is_empty() {
        return Err(Error::Presentation("relations force 1 = 0".into()));
    }
    let inv = lc.inv()?;
    let mut rhs = AlgebraElement::zero();
    for (w, c) in e.terms() {
        if w != lw {
            rhs.add_term(w.clone(), -(c * &inv));
        }
    }
    Ok(Rule { lhs: lw.clone(), rhs })
}

fn derive_rules(r: &RMatrix) -> Result<Vec<Rule>> {
    let n = r.n();
    let gens: Vec<Gen> = (0..n * n).map(|g| Gen::new(g / n, g % n)).collect();
    let mut cols: Vec<Word> = gens.iter().flat_map(|&x| gens.iter().map(move |&y| Word(vec![x, y]))).collect();
    cols.sort_by(|x, y| rewrite_key(y).cmp(&rewrite_key(x)));
    let col_of: HashMap<&Word, usize> = cols.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rels = rtt_relations(r);
    let m = Matrix::from_fn(rels.len(), cols.len(), |i, j| rels[i].coeff(&cols[j]));
    debug_assert!(rels.iter().all(|e| e.terms().all(|(w, _)| col_of.contains_key(w))));
    let (red, pivots) = m.rref();
    let mut rules = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        let mut rhs = AlgebraElement::zero();
        for j in p + 1..cols.len() {
            rhs.add_term(cols[j].clone(), -red.get(i, j).clone());
        }
        rules.push(Rule { lhs: cols[p].clone(), rhs });
    }
    if r.group() == GroupKind::SL {
        let mut det = raw_determinant(n);
        det.add_term(Word::empty(), -Scalar::one());
        let det = reduce_with(&rules, &det);
        if det.is_zero() {
            return Err(Error::Presentation("determinant relation is implied by the quadratic ones".into()));
        }
        rules.push(rule_from(&det)?);
    }
    // Inter-reduce right-hand sides against the complete system.
    let snapshot = rules.clone();
    for rule in rules.iter_mut() {
        rule.rhs = reduce_with(&snapshot, &rule.rhs);
    }
    rules.sort_by(|x, y| x.lhs.cmp(&y.lhs));
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> QuantumGroup {
        QuantumGroup::new(RMatrix::standard(2)).unwrap()
    }

    fn t(qg: &QuantumGroup, a: usize, b: usize) -> AlgebraElement {
        qg.gen(a, b).unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn swap_rule() {
        let qg = sl2();
        let ba = qg.mul(&t(&qg, 1, 2), &t(&qg, 1, 1));
        assert_eq!(ba, qg.mul(&t(&qg, 1, 1), &t(&qg, 1, 2)).scale(&s("q^-1")));
        assert_eq!(ba.to_string(), "q^-1*t[1,1]*t[1,2]");
    }

    #[test]
    fn determinant_normalizes_to_one() {
        let qg = sl2();
        assert_eq!(qg.quantum_determinant(), AlgebraElement::one());
        assert_eq!(qg.rules().len(), 7);
    }

    #[test]
    fn unit_law() {
        let qg = sl2();
        let x = &t(&qg, 2, 1) + &t(&qg, 1, 2);
        assert_eq!(qg.mul(&x, &AlgebraElement::one()), x);
    }

    #[test]
    fn one_dimensional_case() {
        let qg = QuantumGroup::new(RMatrix::standard(1)).unwrap();
        assert_eq!(qg.rules().len(), 1);
        assert_eq!(qg.rules()[0].to_string(), "t[1,1] -> 1");
        assert_eq!(qg.antipode(&t(&qg, 1, 1)).unwrap(), AlgebraElement::one());
    }

    #[test]
    fn antipode_table_sl2() {
        let qg = sl2();
        let k = |a, b| qg.antipode(&t(&qg, a, b)).unwrap();
        assert_eq!(k(1, 1), t(&qg, 2, 2));
        assert_eq!(k(2, 2), t(&qg, 1, 1));
        assert_eq!(k(1, 2), t(&qg, 1, 2).scale(&s("-q^-1")));
        assert_eq!(k(2, 1), t(&qg, 2, 1).scale(&s("-q")));
    }

    #[test]
    fn coproduct_of_generator() {
        let qg = sl2();
        assert_eq!(qg.coproduct(&t(&qg, 1, 1)).to_string(), "t[1,1] (x) t[1,1] + t[1,2] (x) t[2,1]");
    }

    #[test]
    fn gl_mode_has_no_determinant_rule() {
        let qg = QuantumGroup::new(RMatrix::standard(2).with_group(GroupKind::GL)).unwrap();
        assert_eq!(qg.rules().len(), 6);
        assert!(qg.antipode(&AlgebraElement::one()).is_err());
    }

    #[test]
    fn out_of_range_generator() {
        let qg = sl2();
        assert_eq!(qg.gen(1, 3), Err(Error::UnknownSymbol("t[1,3]".into())));
    }

    #[test]
    fn bcd_series_is_refused() {
        let text = RMatrix::standard(2).to_toml().replace("series = \"A\"", "series = \"BCD-reserved\"");
        let r = RMatrix::from_toml(&text).unwrap();
        assert!(matches!(QuantumGroup::new(r), Err(Error::Presentation(_))));
    }
}
