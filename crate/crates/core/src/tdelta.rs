//! The indexing category tΔ: the simplex category extended by marked objects.
//!
//! Objects are the ordinals `[m]` together with marked copies `[m]_t` for
//! `m >= 1`. Arrows are generated by the cofaces `d^i`, the codegeneracies
//! `s^i`, the counmarking maps `φ : [m] -> [m]_t` and the comarking maps
//! `ζ^i : [m]_t -> [m-1]`, subject to the cosimplicial identities and
//!
//! ```text
//! ζ^i φ       = s^i
//! s^i ζ^{j+1} = s^j ζ^i   (i <= j)
//! ```
//!
//! The concrete model used everywhere in this module identifies an arrow with
//! a monotone map between the underlying ordinals plus marking flags on its
//! endpoints; this is the full subcategory of stratified simplicial sets
//! spanned by the representables Δ[m] and Δ[m]_t. A morphism out of a marked
//! object must send the marked top simplex to a marked simplex, which for
//! these targets means: be non-injective, or be an identity onto a marked
//! target. [`validate_presentation`] checks the concrete model against the
//! generators-and-relations description by closing generator words under the
//! relations and comparing equivalence classes with concrete hom-sets.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// An object `[m]` or `[m]_t` of tΔ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TDeltaObject {
    pub m: usize,
    pub marked: bool,
}

impl TDeltaObject {
    pub fn plain(m: usize) -> Self {
        TDeltaObject { m, marked: false }
    }

    pub fn marked(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::MalformedInput("there is no [0]_t".into()));
        }
        Ok(TDeltaObject { m, marked: true })
    }

    /// Reedy degree: deg [0] = 0, deg [k] = 2k-1, deg [k]_t = 2k.
    pub fn degree(&self) -> usize {
        match (self.m, self.marked) {
            (0, _) => 0,
            (k, false) => 2 * k - 1,
            (k, true) => 2 * k,
        }
    }
}

impl fmt::Display for TDeltaObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.m, if self.marked { "t" } else { "" })
    }
}

/// An arrow of tΔ in the concrete model: a monotone map with flagged endpoints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TDeltaMorphism {
    pub src: TDeltaObject,
    pub dst: TDeltaObject,
    pub map: Vec<u8>,
}

impl TDeltaMorphism {
    pub fn new(src: TDeltaObject, dst: TDeltaObject, map: Vec<u8>) -> Result<Self> {
        let f = TDeltaMorphism { src, dst, map };
        f.check_shape()?;
        Ok(f)
    }

    fn check_shape(&self) -> Result<()> {
        if self.map.len() != self.src.m + 1 {
            return Err(Error::MalformedInput(format!(
                "map of length {} out of {}",
                self.map.len(),
                self.src
            )));
        }
        if !self.map.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::MalformedInput(format!(
                "map {:?} is not monotone",
                self.map
            )));
        }
        if self.map.iter().any(|&v| v as usize > self.dst.m) {
            return Err(Error::MalformedInput(format!(
                "map {:?} leaves {}",
                self.map, self.dst
            )));
        }
        Ok(())
    }

    pub fn identity(a: TDeltaObject) -> Self {
        TDeltaMorphism {
            src: a,
            dst: a,
            map: (0..=a.m as u8).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.map.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    pub fn underlying_injective(&self) -> bool {
        self.map.windows(2).all(|w| w[0] < w[1])
    }

    pub fn underlying_surjective(&self) -> bool {
        let mut expect = 0usize;
        for &v in &self.map {
            if v as usize == expect {
                expect += 1;
            }
        }
        expect == self.dst.m + 1
    }

    /// Membership in the concrete hom-set of tΔ.
    ///
    /// A marked source must send its marked top simplex to a marked simplex
    /// of the target: a degenerate one (non-injective map), or the marked top
    /// simplex of a marked target (the identity).
    pub fn is_valid(&self) -> bool {
        if self.check_shape().is_err() {
            return false;
        }
        if !self.src.marked {
            return true;
        }
        if !self.underlying_injective() {
            return true;
        }
        self.dst.marked && self.is_identity()
    }

    /// Membership in tΔ₋ (generated by the surjections of Δ and the ζ's).
    pub fn in_minus(&self) -> bool {
        self.is_identity() || (!self.dst.marked && self.underlying_surjective() && self.is_valid())
    }

    /// Membership in tΔ₊ (generated by the injections of Δ and φ).
    pub fn in_plus(&self) -> bool {
        self.is_identity() || (!self.src.marked && self.underlying_injective())
    }
}

impl fmt::Display for TDeltaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} : {}",
            self.src,
            self.dst,
            self.map
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Parses the CLI syntax `[2]t -> [1] : 0,0,1`.
pub fn parse_morphism(text: &str) -> Result<TDeltaMorphism> {
    let (objs, map_part) = text
        .split_once(':')
        .ok_or_else(|| Error::MalformedInput(format!("missing ':' in morphism `{}`", text)))?;
    let (s, d) = objs
        .split_once("->")
        .ok_or_else(|| Error::MalformedInput(format!("missing '->' in morphism `{}`", text)))?;
    let map = map_part
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<u8>()
                .map_err(|_| Error::MalformedInput(format!("bad image `{}`", v)))
        })
        .collect::<Result<Vec<u8>>>()?;
    let f = TDeltaMorphism::new(parse_object(s.trim())?, parse_object(d.trim())?, map)?;
    if !f.is_valid() {
        return Err(Error::MalformedInput(format!(
            "`{}` is not an arrow of tΔ",
            text
        )));
    }
    Ok(f)
}

/// Parses `[m]` or `[m]t`.
pub fn parse_object(text: &str) -> Result<TDeltaObject> {
    let t = text.trim();
    let (body, marked) = match t.strip_suffix("t").or_else(|| t.strip_suffix("_t")) {
        Some(b) => (b.trim_end_matches('_'), true),
        None => (t, false),
    };
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::MalformedInput(format!("bad object `{}`", text)))?;
    let m: usize = inner
        .parse()
        .map_err(|_| Error::MalformedInput(format!("bad object `{}`", text)))?;
    if marked {
        TDeltaObject::marked(m)
    } else {
        Ok(TDeltaObject::plain(m))
    }
}

/// Composition `g ∘ f`.
pub fn compose(g: &TDeltaMorphism, f: &TDeltaMorphism) -> Result<TDeltaMorphism> {
    if f.dst != g.src {
        return Err(Error::NotComposable(format!("{} then {}", f, g)));
    }
    let h = TDeltaMorphism {
        src: f.src,
        dst: g.dst,
        map: f.map.iter().map(|&v| g.map[v as usize]).collect(),
    };
    debug_assert!(h.is_valid());
    Ok(h)
}

/// All arrows `a -> b`, in lexicographic order of the underlying maps.
pub fn hom_set(a: TDeltaObject, b: TDeltaObject) -> Vec<TDeltaMorphism> {
    let mut out = Vec::new();
    let mut map = vec![0u8; a.m + 1];
    loop {
        let f = TDeltaMorphism {
            src: a,
            dst: b,
            map: map.clone(),
        };
        if f.is_valid() {
            out.push(f);
        }
        // next weakly increasing sequence with entries <= b.m
        let mut i = a.m + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (map[i] as usize) < b.m {
                map[i] += 1;
                for j in i + 1..=a.m {
                    map[j] = map[i];
                }
                break;
            }
        }
    }
}

/// The unique Reedy factorization of an arrow: a tΔ₋ map followed by a tΔ₊ map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReedyFactorization {
    pub minus: TDeltaMorphism,
    pub plus: TDeltaMorphism,
}

/// Factors through the image of the underlying monotone map. A marked source
/// keeps its flag on the surjective part; a marked target receives its flag
/// on the injective part.
pub fn reedy_factorize(f: &TDeltaMorphism) -> ReedyFactorization {
    debug_assert!(f.is_valid());
    if f.is_identity() {
        return ReedyFactorization {
            minus: f.clone(),
            plus: f.clone(),
        };
    }
    let mut image: Vec<u8> = f.map.clone();
    image.dedup();
    let k = image.len() - 1;
    let mid = TDeltaObject::plain(k);
    let rank = |v: u8| image.iter().position(|&w| w == v).unwrap() as u8;
    let minus = TDeltaMorphism {
        src: f.src,
        dst: mid,
        map: f.map.iter().map(|&v| rank(v)).collect(),
    };
    let plus = TDeltaMorphism {
        src: mid,
        dst: f.dst,
        map: image,
    };
    debug_assert!(minus.in_minus() && plus.in_plus());
    ReedyFactorization { minus, plus }
}

/// All sections of `f`: arrows `g` with `f ∘ g = id`.
pub fn sections_of(f: &TDeltaMorphism) -> Vec<TDeltaMorphism> {
    hom_set(f.dst, f.src)
        .into_iter()
        .filter(|g| compose(f, g).map_or(false, |h| h.is_identity()))
        .collect()
}

/// All objects of dimension at most `max_degree`.
pub fn objects_up_to(max_degree: usize) -> Vec<TDeltaObject> {
    let mut out = Vec::new();
    for m in 0..=max_degree {
        out.push(TDeltaObject::plain(m));
        if m >= 1 {
            out.push(TDeltaObject { m, marked: true });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Presentation oracle
// ---------------------------------------------------------------------------

/// A generator arrow of tΔ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    /// `d^i : [m] -> [m+1]`
    D(u8),
    /// `s^i : [m] -> [m-1]`
    S(u8),
    /// `φ : [m] -> [m]_t`
    Phi,
    /// `ζ^i : [m]_t -> [m-1]`
    Zeta(u8),
}

impl Gen {
    fn apply(self, a: TDeltaObject) -> Option<TDeltaObject> {
        match self {
            Gen::D(i) => {
                (!a.marked && (i as usize) <= a.m + 1).then(|| TDeltaObject::plain(a.m + 1))
            }
            Gen::S(i) => (!a.marked && a.m >= 1 && (i as usize) <= a.m - 1)
                .then(|| TDeltaObject::plain(a.m - 1)),
            Gen::Phi => (!a.marked && a.m >= 1).then(|| TDeltaObject {
                m: a.m,
                marked: true,
            }),
            Gen::Zeta(i) => {
                (a.marked && (i as usize) <= a.m - 1).then(|| TDeltaObject::plain(a.m - 1))
            }
        }
    }

    /// The arrow in the concrete model with the given source.
    pub fn concrete(self, a: TDeltaObject) -> TDeltaMorphism {
        let dst = self.apply(a).expect("generator defined at source");
        let map: Vec<u8> = match self {
            Gen::D(i) => (0..=a.m as u8)
                .map(|j| if j < i { j } else { j + 1 })
                .collect(),
            Gen::S(i) | Gen::Zeta(i) => (0..=a.m as u8)
                .map(|j| if j <= i { j } else { j - 1 })
                .collect(),
            Gen::Phi => (0..=a.m as u8).collect(),
        };
        TDeltaMorphism { src: a, dst, map }
    }

    fn pack(self) -> u8 {
        match self {
            Gen::D(i) => i,
            Gen::S(i) => 0x40 | i,
            Gen::Phi => 0x80,
            Gen::Zeta(i) => 0xC0 | i,
        }
    }
}

fn outgoing(a: TDeltaObject, max_degree: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    if a.marked {
        for i in 0..a.m {
            out.push(Gen::Zeta(i as u8));
        }
        return out;
    }
    if a.m >= 1 {
        for i in 0..a.m {
            out.push(Gen::S(i as u8));
        }
    }
    if a.m + 1 <= max_degree {
        for i in 0..=a.m + 1 {
            out.push(Gen::D(i as u8));
        }
    }
    if a.m >= 1 {
        out.push(Gen::Phi);
    }
    out
}

/// Rewrites of a one- or two-letter window under the relations, both
/// directions. Words are in diagrammatic order (leftmost letter applied first),
/// so a window `(x, y)` denotes the composite `y ∘ x`.
fn window_rewrites(w: &[Gen]) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    if w.len() == 1 {
        if let Gen::S(i) = w[0] {
            out.push(vec![Gen::Phi, Gen::Zeta(i)]);
        }
        return out;
    }
    match (w[0], w[1]) {
        (Gen::D(a), Gen::D(b)) => {
            // d^j d^i = d^i d^{j-1} for i < j
            if a < b {
                out.push(vec![Gen::D(b - 1), Gen::D(a)]);
            } else {
                out.push(vec![Gen::D(b), Gen::D(a + 1)]);
            }
        }
        (Gen::D(a), Gen::S(b)) => {
            // s^j d^i: interchange or cancellation
            if a < b {
                out.push(vec![Gen::S(b - 1), Gen::D(a)]);
            } else if a == b || a == b + 1 {
                out.push(Vec::new());
            } else {
                out.push(vec![Gen::S(b), Gen::D(a - 1)]);
            }
        }
        (Gen::S(a), Gen::D(b)) => {
            // d^i s^j read backwards through the interchange rules
            if b <= a {
                out.push(vec![Gen::D(b), Gen::S(a + 1)]);
            } else {
                out.push(vec![Gen::D(b + 1), Gen::S(a)]);
            }
        }
        (Gen::S(a), Gen::S(b)) => {
            // s^j s^i = s^i s^{j+1} for i <= j
            if a <= b {
                out.push(vec![Gen::S(b + 1), Gen::S(a)]);
            } else {
                out.push(vec![Gen::S(b), Gen::S(a - 1)]);
            }
        }
        (Gen::Phi, Gen::Zeta(i)) => {
            out.push(vec![Gen::S(i)]);
        }
        (Gen::Zeta(a), Gen::S(b)) => {
            // s^i ζ^{j+1} = s^j ζ^i for i <= j
            if b < a {
                out.push(vec![Gen::Zeta(b), Gen::S(a - 1)]);
            } else {
                out.push(vec![Gen::Zeta(b + 1), Gen::S(a)]);
            }
        }
        _ => {}
    }
    out
}

/// Per-hom-set outcome of the presentation oracle.
#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub src: String,
    pub dst: String,
    pub word_classes: usize,
    pub hom_size: usize,
    /// Concrete arrows not reached by any word within the length budget.
    pub unreached: usize,
    /// Concrete arrows hit by more than one word class.
    pub collisions: usize,
    pub pass: bool,
}

/// Result of [`validate_presentation`].
#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub max_degree: usize,
    pub max_word_length: usize,
    pub words_enumerated: usize,
    pub homs: Vec<HomReport>,
    pub pass: bool,
    /// Set when the word budget was insufficient to reach every arrow.
    pub incomplete: bool,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = x;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

fn pack_word(w: &[Gen]) -> u64 {
    let mut p = 0u64;
    for (i, g) in w.iter().enumerate() {
        p |= (g.pack() as u64) << (8 * i);
    }
    p
}

/// Compares the free category on the generators modulo the stated relations
/// against the concrete model, on all hom-sets between objects of dimension
/// at most `max_degree`, using generator words of length at most
/// `max_word_length` threaded through objects within the same bound.
pub fn validate_presentation(
    max_degree: usize,
    max_word_length: usize,
) -> Result<PresentationReport> {
    if max_word_length > 8 {
        return Err(Error::Unsupported(
            "word length budget above 8 is not supported".into(),
        ));
    }
    let starts = objects_up_to(max_degree);
    // enumerate all composable words, breadth-first by length
    let mut words: Vec<(TDeltaObject, Vec<Gen>, TDeltaObject)> = Vec::new();
    let mut index: HashMap<(TDeltaObject, u8, u64), u32> = HashMap::new();
    for &a in &starts {
        let mut frontier: Vec<(Vec<Gen>, TDeltaObject)> = vec![(Vec::new(), a)];
        let id = words.len() as u32;
        index.insert((a, 0, 0), id);
        words.push((a, Vec::new(), a));
        for _len in 1..=max_word_length {
            let mut next = Vec::new();
            for (w, end) in &frontier {
                for g in outgoing(*end, max_degree) {
                    let e2 = g.apply(*end).unwrap();
                    let mut w2 = w.clone();
                    w2.push(g);
                    let key = (a, w2.len() as u8, pack_word(&w2));
                    let id = words.len() as u32;
                    index.insert(key, id);
                    words.push((a, w2.clone(), e2));
                    next.push((w2, e2));
                }
            }
            frontier = next;
        }
    }

    // close under the relations
    let mut uf = UnionFind::new(words.len());
    for id in 0..words.len() {
        let (a, w, _) = words[id].clone();
        for pos in 0..w.len() {
            for span in 1..=2usize.min(w.len() - pos) {
                for replacement in window_rewrites(&w[pos..pos + span]) {
                    let mut w2: Vec<Gen> = Vec::with_capacity(w.len() + 1);
                    w2.extend_from_slice(&w[..pos]);
                    w2.extend_from_slice(&replacement);
                    w2.extend_from_slice(&w[pos + span..]);
                    if w2.len() > max_word_length {
                        continue;
                    }
                    // the rewritten word must be composable within the bound
                    let mut obj = a;
                    let mut ok = true;
                    for g in &w2 {
                        match g.apply(obj) {
                            Some(o) if o.m <= max_degree => obj = o,
                            _ => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    if let Some(&other) = index.get(&(a, w2.len() as u8, pack_word(&w2))) {
                        uf.union(id as u32, other);
                    }
                }
            }
        }
    }

    // tally per hom-set
    let mut per_pair: HashMap<(TDeltaObject, TDeltaObject), Vec<u32>> = HashMap::new();
    for (id, (a, _, b)) in words.iter().enumerate() {
        per_pair.entry((*a, *b)).or_default().push(id as u32);
    }
    let mut homs = Vec::new();
    let mut all_pass = true;
    let mut incomplete = false;
    for &a in &starts {
        for &b in &starts {
            let hom = hom_set(a, b);
            let ids = per_pair.get(&(a, b)).cloned().unwrap_or_default();
            if hom.is_empty() && ids.is_empty() {
                continue;
            }
            let mut class_concrete: HashMap<u32, TDeltaMorphism> = HashMap::new();
            let mut soundness_violation = false;
            for id in ids {
                let w = &words[id as usize].1;
                let mut f = TDeltaMorphism::identity(a);
                for g in w {
                    f = compose(&g.concrete(f.dst), &f)?;
                }
                let root = uf.find(id);
                match class_concrete.get(&root) {
                    None => {
                        class_concrete.insert(root, f);
                    }
                    Some(prev) if *prev != f => soundness_violation = true,
                    _ => {}
                }
            }
            let mut by_concrete: HashMap<&TDeltaMorphism, usize> = HashMap::new();
            for f in class_concrete.values() {
                *by_concrete.entry(f).or_insert(0) += 1;
            }
            let collisions = by_concrete.values().filter(|&&c| c > 1).count();
            let unreached = hom.iter().filter(|f| !by_concrete.contains_key(f)).count();
            let pass = !soundness_violation && collisions == 0 && unreached == 0;
            all_pass &= pass;
            incomplete |= unreached > 0;
            homs.push(HomReport {
                src: a.to_string(),
                dst: b.to_string(),
                word_classes: class_concrete.len(),
                hom_size: hom.len(),
                unreached,
                collisions,
                pass,
            });
        }
    }
    Ok(PresentationReport {
        max_degree,
        max_word_length,
        words_enumerated: words.len(),
        homs,
        pass: all_pass,
        incomplete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(m: usize) -> TDeltaObject {
        TDeltaObject::plain(m)
    }

    fn objt(m: usize) -> TDeltaObject {
        TDeltaObject::marked(m).unwrap()
    }

    #[test]
    fn validity_rules() {
        // unmarked source is unconstrained
        assert!(TDeltaMorphism::new(obj(1), obj(2), vec![0, 2])
            .unwrap()
            .is_valid());
        // injective map out of a marked source into an unmarked target is not an arrow
        assert!(!TDeltaMorphism::new(objt(1), obj(1), vec![0, 1])
            .unwrap()
            .is_valid());
        // identities of marked objects are arrows
        assert!(TDeltaMorphism::identity(objt(1)).is_valid());
        // non-identity injective marked-to-marked is not
        assert!(!TDeltaMorphism::new(objt(1), objt(2), vec![0, 1])
            .unwrap()
            .is_valid());
    }

    #[test]
    fn composition_reproduces_relations() {
        // ζ^0 ∘ φ = s^0 : [1] -> [0]
        let phi = Gen::Phi.concrete(obj(1));
        let zeta0 = Gen::Zeta(0).concrete(objt(1));
        let c = compose(&zeta0, &phi).unwrap();
        assert_eq!(c, Gen::S(0).concrete(obj(1)));

        // s^0 ζ^1 = s^0 ζ^0 : [2]_t -> [0]
        let z1 = Gen::Zeta(1).concrete(objt(2));
        let z0 = Gen::Zeta(0).concrete(objt(2));
        let s0 = Gen::S(0).concrete(obj(1));
        assert_eq!(compose(&s0, &z1).unwrap(), compose(&s0, &z0).unwrap());

        // identity law
        let f = TDeltaMorphism::new(obj(1), obj(2), vec![0, 2]).unwrap();
        assert_eq!(compose(&TDeltaMorphism::identity(obj(2)), &f).unwrap(), f);
    }

    #[test]
    fn hom_sets() {
        assert_eq!(hom_set(obj(1), obj(2)).len(), 6);
        assert_eq!(hom_set(objt(2), obj(1)).len(), 4);
        let h = hom_set(objt(1), objt(1));
        assert_eq!(h.len(), 3);
        assert!(h.iter().any(|f| f.is_identity()));
    }

    #[test]
    fn reedy_cases() {
        // [1] -> [2] constant: collapse then include vertex 0
        let f = TDeltaMorphism::new(obj(1), obj(2), vec![0, 0]).unwrap();
        let rf = reedy_factorize(&f);
        assert_eq!(rf.minus.dst, obj(0));
        assert_eq!(rf.plus.map, vec![0]);
        assert_eq!(compose(&rf.plus, &rf.minus).unwrap(), f);

        // [2]_t -> [1]_t collapsing: ζ-type map then φ
        let g = TDeltaMorphism::new(objt(2), objt(1), vec![0, 0, 1]).unwrap();
        let rg = reedy_factorize(&g);
        assert_eq!(rg.minus.dst, obj(1));
        assert_eq!(rg.minus.map, vec![0, 0, 1]);
        assert!(rg.plus.dst.marked && rg.plus.map == vec![0, 1]);

        let idf = reedy_factorize(&TDeltaMorphism::identity(objt(2)));
        assert!(idf.minus.is_identity() && idf.plus.is_identity());
    }

    #[test]
    fn sections() {
        // ζ^0 : [1]_t -> [0] has both vertex inclusions composed with φ
        let z = Gen::Zeta(0).concrete(objt(1));
        assert_eq!(sections_of(&z).len(), 2);
        assert_eq!(sections_of(&TDeltaMorphism::identity(obj(2))).len(), 1);
        let d0 = Gen::D(0).concrete(obj(0));
        assert!(sections_of(&d0).is_empty());
    }

    #[test]
    fn presentation_small() {
        let r = validate_presentation(1, 4).unwrap();
        assert!(r.pass, "{:?}", r.homs);
        let h = r
            .homs
            .iter()
            .find(|h| h.src == "[1]t" && h.dst == "[0]")
            .unwrap();
        assert_eq!(h.word_classes, 1);

        let r0 = validate_presentation(0, 2).unwrap();
        assert!(r0.pass);
        let h00 = r0
            .homs
            .iter()
            .find(|h| h.src == "[0]" && h.dst == "[0]")
            .unwrap();
        assert_eq!(h00.hom_size, 1);
    }

    #[test]
    fn presentation_degree_two() {
        let r = validate_presentation(2, 6).unwrap();
        assert!(
            r.pass,
            "{:#?}",
            r.homs.iter().filter(|h| !h.pass).collect::<Vec<_>>()
        );
        let h = r
            .homs
            .iter()
            .find(|h| h.src == "[1]" && h.dst == "[2]")
            .unwrap();
        assert_eq!(h.word_classes, 6);
    }

    #[test]
    fn parse_roundtrip() {
        let f = parse_morphism("[2]t -> [1] : 0,0,1").unwrap();
        assert_eq!(f.src, objt(2));
        assert_eq!(f.dst, obj(1));
        assert!(parse_morphism("[1]t -> [1] : 0,1").is_err());
    }

    #[test]
    fn composition_closure_and_laws() {
        use crate::scomplex::SimplicialOperator;
        let objects = objects_up_to(3);
        // validity is closed under composition, exhaustively
        for &a in &objects {
            for &b in &objects {
                for f in hom_set(a, b) {
                    assert_eq!(
                        compose(&TDeltaMorphism::identity(b), &f).unwrap(),
                        f
                    );
                    assert_eq!(
                        compose(&f, &TDeltaMorphism::identity(a)).unwrap(),
                        f
                    );
                    for &c in &objects {
                        for g in hom_set(b, c) {
                            assert!(compose(&g, &f).unwrap().is_valid());
                        }
                    }
                }
            }
        }
        // associativity on underlying maps, exhaustively over ordinals <= [4];
        // the marking flags do not enter the composite map
        let ops = |p: usize, q: usize| -> Vec<Vec<u8>> {
            let mut out = Vec::new();
            let mut cur = vec![0u8; p + 1];
            loop {
                if cur.windows(2).all(|w| w[0] <= w[1]) {
                    out.push(cur.clone());
                }
                let mut i = p + 1;
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if (cur[i] as usize) < q {
                        cur[i] += 1;
                        for j in i + 1..=p {
                            cur[j] = 0;
                        }
                        break;
                    }
                }
            }
        };
        let comp = |g: &Vec<u8>, f: &Vec<u8>| -> Vec<u8> {
            f.iter().map(|&v| g[v as usize]).collect()
        };
        for p in 0..=4usize {
            for q in 0..=4usize {
                for r in 0..=4usize {
                    for s in 0..=4usize {
                        for f in ops(p, q) {
                            for g in ops(q, r) {
                                for h in ops(r, s) {
                                    assert_eq!(comp(&h, &comp(&g, &f)), comp(&comp(&h, &g), &f));
                                }
                            }
                        }
                    }
                }
            }
        }
        let _ = SimplicialOperator::identity(1);
    }
}
