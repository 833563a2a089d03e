//! The stratification layer: presheaves on tΔ over a finite simplicial set.
//!
//! A prestratified simplicial set carries, in every dimension `m >= 1`, a set
//! of labels with an anchor map to the m-simplices. The comarking maps force
//! every degenerate simplex to carry a distinguished label, and the relation
//! `s^i ζ^{j+1} = s^j ζ^i` forces those distinguished labels to agree across
//! the different degeneracy expressions of the same simplex. The canonical
//! representation used here therefore keeps the degeneracy labels implicit —
//! one per degenerate simplex, in every dimension — and stores only the
//! remaining labels explicitly ([`ExtraLabel`]). An extra label may anchor at
//! a non-degenerate simplex (an ordinary marking) or at a degenerate one (a
//! second label over it, which makes the object non-stratified).
//!
//! The object is stratified when anchors are jointly injective: extras anchor
//! at pairwise distinct non-degenerate simplices. The reflector replaces the
//! label sets by their anchor images.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::scomplex::{
    self, degenerate_word, product as sproduct, pushout_along_mono, strip_common, Cell,
    FiniteSimplicialSet, FormalSimplex, Product, SMap,
};
use crate::{Error, Result};

/// A stored label: an anchor beyond the implicit degeneracy labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExtraLabel {
    pub anchor: FormalSimplex,
}

/// A prestratified simplicial set in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prestrat {
    pub space: FiniteSimplicialSet,
    /// `extra[m-1]` lists the stored labels in dimension `m`, sorted by anchor.
    pub extra: Vec<Vec<ExtraLabel>>,
}

/// Identifies a label of a given object in a given dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LabelKey {
    /// The distinguished label of a degenerate simplex.
    Zeta(FormalSimplex),
    /// A stored label, by index into `extra[m-1]`.
    Extra(u32),
}

impl Prestrat {
    /// Wraps a complex with its minimal stratification (degeneracies only).
    pub fn flat(space: FiniteSimplicialSet) -> Self {
        let dim = space.dim();
        Prestrat {
            space,
            extra: vec![Vec::new(); dim],
        }
    }

    /// The maximal stratification: every simplex of positive dimension marked.
    pub fn sharp(space: FiniteSimplicialSet) -> Self {
        let extra = (1..=space.dim())
            .map(|m| {
                space
                    .cells(m)
                    .map(|c| ExtraLabel {
                        anchor: FormalSimplex::cell(c),
                    })
                    .collect()
            })
            .collect();
        let mut x = Prestrat { space, extra };
        x.normalize();
        x
    }

    pub fn from_extras(space: FiniteSimplicialSet, mut extra: Vec<Vec<ExtraLabel>>) -> Self {
        extra.resize(space.dim(), Vec::new());
        let mut x = Prestrat { space, extra };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        for level in &mut self.extra {
            level.sort();
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn extras(&self, m: usize) -> &[ExtraLabel] {
        if m >= 1 && m <= self.extra.len() {
            &self.extra[m - 1]
        } else {
            &[]
        }
    }

    /// Anchor of a label key in dimension `m`.
    pub fn anchor(&self, m: usize, key: &LabelKey) -> FormalSimplex {
        match key {
            LabelKey::Zeta(f) => f.clone(),
            LabelKey::Extra(i) => self.extras(m)[*i as usize].anchor.clone(),
        }
    }

    pub fn key_exists(&self, m: usize, key: &LabelKey) -> bool {
        match key {
            LabelKey::Zeta(f) => f.is_degenerate() && f.dim() == m,
            LabelKey::Extra(i) => (*i as usize) < self.extras(m).len(),
        }
    }

    /// Whether a formal simplex is marked (carries at least one label).
    pub fn is_marked(&self, f: &FormalSimplex) -> bool {
        f.is_degenerate() || self.extras(f.dim()).iter().any(|l| &l.anchor == f)
    }

    /// All labels anchored at a formal simplex, degeneracy label first.
    pub fn labels_at(&self, f: &FormalSimplex) -> Vec<LabelKey> {
        let mut out = Vec::new();
        if f.is_degenerate() {
            out.push(LabelKey::Zeta(f.clone()));
        }
        for (i, l) in self.extras(f.dim()).iter().enumerate() {
            if &l.anchor == f {
                out.push(LabelKey::Extra(i as u32));
            }
        }
        out
    }

    /// All label keys in dimension `m`: degeneracy labels in formal order,
    /// then the stored ones.
    pub fn all_labels(&self, m: usize) -> Vec<LabelKey> {
        let mut out: Vec<LabelKey> = self
            .space
            .formal_simplices(m)
            .into_iter()
            .filter(|f| f.is_degenerate())
            .map(LabelKey::Zeta)
            .collect();
        out.extend((0..self.extras(m).len()).map(|i| LabelKey::Extra(i as u32)));
        out
    }

    /// Marked non-degenerate simplices per dimension (each counted once).
    pub fn marked_profile(&self) -> Vec<usize> {
        self.extra
            .iter()
            .map(|level| {
                let mut anchors: Vec<&FormalSimplex> = level
                    .iter()
                    .map(|l| &l.anchor)
                    .filter(|a| !a.is_degenerate())
                    .collect();
                anchors.sort();
                anchors.dedup();
                anchors.len()
            })
            .collect()
    }

    pub fn marked_nondegenerate_count(&self) -> usize {
        self.marked_profile().iter().sum()
    }

    /// Anchors are jointly injective: no extra over a degenerate simplex and
    /// no two extras with the same anchor.
    pub fn is_stratified(&self) -> bool {
        for level in &self.extra {
            for l in level {
                if l.anchor.is_degenerate() {
                    return false;
                }
            }
            if level.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// Re-truncates the underlying complex at a higher dimension, keeping the
    /// stored labels. Degeneracy labels in the new dimensions are implicit.
    pub fn with_dim(&self, d: usize) -> Self {
        let mut extra = self.extra.clone();
        extra.resize(d, Vec::new());
        Prestrat {
            space: self.space.with_dim(d),
            extra,
        }
    }

    /// Structural validation: the underlying complex satisfies the simplicial
    /// identities and every stored label anchors at an existing simplex.
    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        if self.extra.len() != self.space.dim() {
            return Err(Error::MalformedInput(
                "label table does not match the dimension bound".into(),
            ));
        }
        for (i, level) in self.extra.iter().enumerate() {
            let m = i + 1;
            for l in level {
                if l.anchor.dim() != m {
                    return Err(Error::MalformedInput(format!(
                        "label anchored at a {}-simplex stored in dimension {}",
                        l.anchor.dim(),
                        m
                    )));
                }
                let b = l.anchor.base;
                if (b.dim as usize) > self.space.dim()
                    || (b.idx as usize) >= self.space.cell_count(b.dim as usize)
                {
                    return Err(Error::MalformedInput(
                        "label anchored at a missing simplex".into(),
                    ));
                }
                if !l.anchor.word.windows(2).all(|w| w[0] > w[1]) {
                    return Err(Error::MalformedInput(
                        "label anchor word is not in normal form".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The standard simplex Δ[m] as a prestratified object.
pub fn delta(m: usize) -> Prestrat {
    Prestrat::flat(scomplex::standard(m))
}

/// The representable marked simplex Δ[m]_t: the top simplex marked.
pub fn delta_t(m: usize) -> Result<Prestrat> {
    if m == 0 {
        return Err(Error::IndexRange("there is no Δ[0]_t".into()));
    }
    let space = scomplex::standard(m);
    let top = FormalSimplex::cell(Cell::new(m, 0));
    let mut e = vec![Vec::new(); m];
    e[m - 1].push(ExtraLabel { anchor: top });
    Ok(Prestrat::from_extras(space, e))
}

/// The empty prestratified set Δ[-1].
pub fn initial() -> Prestrat {
    Prestrat::flat(FiniteSimplicialSet::empty())
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

/// A morphism of prestratified simplicial sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StratMap {
    pub simp: SMap,
    /// `labels[m-1][i]` is the image of the source's i-th stored label in
    /// dimension `m`. Degeneracy labels map canonically and are not stored.
    pub labels: Vec<Vec<LabelKey>>,
}

impl StratMap {
    pub fn identity(x: &Prestrat) -> Self {
        StratMap {
            simp: SMap::identity(&x.space),
            labels: (1..=x.dim())
                .map(|m| {
                    (0..x.extras(m).len())
                        .map(|i| LabelKey::Extra(i as u32))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn label_image(&self, m: usize, i: usize) -> &LabelKey {
        &self.labels[m - 1][i]
    }

    /// Image of an arbitrary label key of the source.
    pub fn image_key(&self, m: usize, key: &LabelKey) -> LabelKey {
        match key {
            LabelKey::Zeta(f) => LabelKey::Zeta(self.simp.image(f)),
            LabelKey::Extra(i) => self.labels[m - 1][*i as usize].clone(),
        }
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &StratMap) -> StratMap {
        let simp = self.simp.then(&other.simp);
        let labels = self
            .labels
            .iter()
            .enumerate()
            .map(|(m1, level)| level.iter().map(|k| other.image_key(m1 + 1, k)).collect())
            .collect();
        StratMap { simp, labels }
    }

    /// Full well-definedness check: simplicial naturality plus anchor
    /// compatibility of the label assignment.
    pub fn validate(&self, src: &Prestrat, dst: &Prestrat) -> Result<()> {
        self.simp.validate(&src.space, &dst.space)?;
        if self.labels.len() < src.dim() {
            return Err(Error::MalformedInput(
                "label assignment does not cover the source".into(),
            ));
        }
        for m in 1..=src.dim() {
            let level = &self.labels[m - 1];
            if level.len() != src.extras(m).len() {
                return Err(Error::MalformedInput(format!(
                    "label assignment has {} entries in dimension {}, expected {}",
                    level.len(),
                    m,
                    src.extras(m).len()
                )));
            }
            for (i, key) in level.iter().enumerate() {
                if !dst.key_exists(m, key) {
                    return Err(Error::MalformedInput(format!(
                        "label image {:?} does not exist in dimension {}",
                        key, m
                    )));
                }
                let want = self.simp.image(&src.extras(m)[i].anchor);
                if dst.anchor(m, key) != want {
                    return Err(Error::MalformedInput(format!(
                        "label {} in dimension {} breaks anchor compatibility",
                        i, m
                    )));
                }
            }
        }
        Ok(())
    }

    /// Levelwise injectivity on simplices and on labels.
    pub fn is_mono(&self, src: &Prestrat, _dst: &Prestrat) -> bool {
        if !self.simp.is_mono(&src.space) {
            return false;
        }
        // with an injective underlying map the degeneracy labels stay
        // injective among themselves, and a stored label mapping onto a
        // degeneracy label always collides with one
        for level in &self.labels {
            if level.iter().any(|k| matches!(k, LabelKey::Zeta(_))) {
                return false;
            }
            let mut seen: Vec<&LabelKey> = level.iter().collect();
            seen.sort();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// Bijective on underlying simplices (identity up to renaming).
    pub fn is_entire(&self, src: &Prestrat, dst: &Prestrat) -> bool {
        self.simp.is_mono(&src.space) && self.simp.is_iso(&src.space, &dst.space)
    }

    /// The marking squares are pullbacks in every dimension: a source simplex
    /// carries exactly the labels of its image, and distinct labels stay
    /// distinct.
    pub fn is_regular(&self, src: &Prestrat, dst: &Prestrat) -> bool {
        let top = src.dim().max(dst.dim());
        for m in 1..=top {
            let mut assignment: HashMap<(FormalSimplex, LabelKey), usize> = HashMap::new();
            for key in src.all_labels(m) {
                let a = src.anchor(m, &key);
                let pair = (a, self.image_key(m, &key));
                *assignment.entry(pair).or_insert(0) += 1;
            }
            if assignment.values().any(|&c| c > 1) {
                return false;
            }
            // surjectivity onto the pullback
            for a in src.space.formal_simplices(m) {
                let fa = self.simp.image(&a);
                for lz in dst.labels_at(&fa) {
                    if !assignment.contains_key(&(a.clone(), lz)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_iso(&self, src: &Prestrat, dst: &Prestrat) -> bool {
        if !self.is_mono(src, dst) || !self.is_entire(src, dst) {
            return false;
        }
        for m in 1..=src.dim().max(dst.dim()) {
            if src.extras(m).len() != dst.extras(m).len() {
                return false;
            }
        }
        true
    }
}

/// Coarse classification of a morphism of prestratified sets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoClass {
    NotMono,
    Entire,
    Regular,
    PlainMono,
}

impl fmt::Display for MonoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MonoClass::NotMono => "not-mono",
            MonoClass::Entire => "entire",
            MonoClass::Regular => "regular",
            MonoClass::PlainMono => "plain-mono",
        };
        write!(f, "{}", s)
    }
}

/// Classifies a morphism as not-mono, entire, regular, or plain-mono.
pub fn classify_mono(f: &StratMap, src: &Prestrat, dst: &Prestrat) -> MonoClass {
    if !f.is_mono(src, dst) {
        return MonoClass::NotMono;
    }
    if f.is_entire(src, dst) {
        return MonoClass::Entire;
    }
    if f.is_regular(src, dst) {
        return MonoClass::Regular;
    }
    MonoClass::PlainMono
}

// ---------------------------------------------------------------------------
// Reflector
// ---------------------------------------------------------------------------

/// The reflection of a prestratified set into stratified ones, with its unit.
pub struct Reflection {
    pub object: Prestrat,
    pub unit: StratMap,
}

/// Replaces every label set by its anchor image: one label per marked simplex.
pub fn reflector(x: &Prestrat) -> Reflection {
    let mut extra: Vec<Vec<ExtraLabel>> = Vec::with_capacity(x.dim());
    let mut unit_labels: Vec<Vec<LabelKey>> = Vec::with_capacity(x.dim());
    for m in 1..=x.dim() {
        let mut anchors: Vec<FormalSimplex> = x
            .extras(m)
            .iter()
            .map(|l| l.anchor.clone())
            .filter(|a| !a.is_degenerate())
            .collect();
        anchors.sort();
        anchors.dedup();
        let level: Vec<ExtraLabel> = anchors
            .iter()
            .map(|a| ExtraLabel { anchor: a.clone() })
            .collect();
        let images = x
            .extras(m)
            .iter()
            .map(|l| {
                if l.anchor.is_degenerate() {
                    LabelKey::Zeta(l.anchor.clone())
                } else {
                    let i = anchors.binary_search(&l.anchor).unwrap();
                    LabelKey::Extra(i as u32)
                }
            })
            .collect();
        extra.push(level);
        unit_labels.push(images);
    }
    let object = Prestrat {
        space: x.space.clone(),
        extra,
    };
    let unit = StratMap {
        simp: SMap::identity(&x.space),
        labels: unit_labels,
    };
    Reflection { object, unit }
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// A product of prestratified sets, with projections and lookup tables.
pub struct ProductStrat {
    pub object: Prestrat,
    pub cells: Product,
    /// `label_pairs[m-1][i]`: component keys of the i-th stored label.
    pub label_pairs: Vec<Vec<(LabelKey, LabelKey)>>,
    pub label_index: Vec<HashMap<(LabelKey, LabelKey), u32>>,
    pub proj1: StratMap,
    pub proj2: StratMap,
}

/// Levelwise product with labels paired componentwise, capped at `cap`.
///
/// A pair of degeneracy labels over a jointly degenerate pair of simplices is
/// the degeneracy label of the pair and stays implicit; every other pair of
/// labels is stored.
pub fn product_strat(x: &Prestrat, y: &Prestrat, cap: usize) -> ProductStrat {
    let cells = sproduct(&x.space, &y.space, cap);
    let top = cells.complex.dim();
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); top];
    let mut label_pairs: Vec<Vec<(LabelKey, LabelKey)>> = vec![Vec::new(); top];
    let mut label_index: Vec<HashMap<(LabelKey, LabelKey), u32>> = vec![HashMap::new(); top];
    for m in 1..=top {
        let keys1 = x.all_labels(m);
        let keys2 = y.all_labels(m);
        let mut items: Vec<(FormalSimplex, LabelKey, LabelKey)> = Vec::new();
        for k1 in &keys1 {
            let a1 = x.anchor(m, k1);
            for k2 in &keys2 {
                if let (LabelKey::Zeta(f1), LabelKey::Zeta(f2)) = (k1, k2) {
                    if f1.word.iter().any(|j| f2.word.contains(j)) {
                        continue;
                    }
                }
                let a2 = y.anchor(m, k2);
                let (word, b1, b2) = strip_common(&x.space, &y.space, &a1, &a2);
                let base = cells.index[&(b1, b2)];
                let anchor = FormalSimplex { word, base };
                items.push((anchor, k1.clone(), k2.clone()));
            }
        }
        items.sort();
        for (i, (anchor, k1, k2)) in items.iter().enumerate() {
            extra[m - 1].push(ExtraLabel {
                anchor: anchor.clone(),
            });
            label_pairs[m - 1].push((k1.clone(), k2.clone()));
            label_index[m - 1].insert((k1.clone(), k2.clone()), i as u32);
        }
    }
    let object = Prestrat {
        space: cells.complex.clone(),
        extra,
    };
    let proj1 = StratMap {
        simp: cells.proj1.clone(),
        labels: label_pairs
            .iter()
            .map(|level| level.iter().map(|(k1, _)| k1.clone()).collect())
            .collect(),
    };
    let proj2 = StratMap {
        simp: cells.proj2.clone(),
        labels: label_pairs
            .iter()
            .map(|level| level.iter().map(|(_, k2)| k2.clone()).collect())
            .collect(),
    };
    ProductStrat {
        object,
        cells,
        label_pairs,
        label_index,
        proj1,
        proj2,
    }
}

/// The product label key for a pair of component keys, resolving pairs of
/// degeneracy labels over jointly degenerate anchors to a degeneracy label.
pub fn product_pair_key(
    p: &ProductStrat,
    x: &Prestrat,
    y: &Prestrat,
    m: usize,
    k1: &LabelKey,
    k2: &LabelKey,
) -> LabelKey {
    // above the top dimension every pair of labels is jointly degenerate
    if m <= p.label_index.len() {
        if let Some(&i) = p.label_index[m - 1].get(&(k1.clone(), k2.clone())) {
            return LabelKey::Extra(i);
        }
    }
    let (f1, f2) = match (k1, k2) {
        (LabelKey::Zeta(f1), LabelKey::Zeta(f2)) => (f1, f2),
        _ => panic!("missing product label for {:?} x {:?}", k1, k2),
    };
    let (word, b1, b2) = strip_common(&x.space, &y.space, f1, f2);
    let base = p.cells.index[&(b1, b2)];
    LabelKey::Zeta(FormalSimplex { word, base })
}

/// The formal simplex of a product underlying a pair of formal simplices.
pub fn product_pair_simplex(
    p: &ProductStrat,
    x: &Prestrat,
    y: &Prestrat,
    f1: &FormalSimplex,
    f2: &FormalSimplex,
) -> FormalSimplex {
    let (word, b1, b2) = strip_common(&x.space, &y.space, f1, f2);
    FormalSimplex {
        word,
        base: p.cells.index[&(b1, b2)],
    }
}

// ---------------------------------------------------------------------------
// Joins
// ---------------------------------------------------------------------------

/// A join of stratified sets, with the component decomposition of each cell.
pub struct JoinStrat {
    pub object: Prestrat,
    /// `parts[k][idx] = (left component, right component)`; `None` is the
    /// empty simplex.
    pub parts: Vec<Vec<(Option<Cell>, Option<Cell>)>>,
    pub index: HashMap<(Option<Cell>, Option<Cell>), Cell>,
}

/// Join of two stratified simplicial sets. A simplex `a ⋆ b` is marked when
/// either component is marked. Restricted to stratified inputs because the
/// marking rule is stated for markings, not labels.
pub fn join_strat(x: &Prestrat, y: &Prestrat) -> Result<JoinStrat> {
    if !x.is_stratified() || !y.is_stratified() {
        return Err(Error::Unsupported(
            "join is only defined for stratified inputs".into(),
        ));
    }
    let xdim = if x.space.is_empty() { -1 } else { x.dim() as isize };
    let ydim = if y.space.is_empty() { -1 } else { y.dim() as isize };
    let top = (xdim + ydim + 1).max(0) as usize;
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut parts: Vec<Vec<(Option<Cell>, Option<Cell>)>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<(Option<Cell>, Option<Cell>), Cell> = HashMap::new();
    for k in 0..=top {
        // left component first: matches the vertex order of the join
        for la in (-1..=(k as isize)).rev() {
            let lb = k as isize - 1 - la;
            if la > xdim || lb > ydim {
                continue;
            }
            let lefts: Vec<Option<Cell>> = if la < 0 {
                vec![None]
            } else {
                x.space.cells(la as usize).map(Some).collect()
            };
            let rights: Vec<Option<Cell>> = if lb < 0 {
                vec![None]
            } else {
                y.space.cells(lb as usize).map(Some).collect()
            };
            for &a in &lefts {
                for &b in &rights {
                    if a.is_none() && b.is_none() {
                        continue;
                    }
                    let idx = names[k].len();
                    let name = match (a, b) {
                        (Some(a), Some(b)) => {
                            format!("{}*{}", x.space.cell_name(a), y.space.cell_name(b))
                        }
                        (Some(a), None) => format!("{}*", x.space.cell_name(a)),
                        (None, Some(b)) => format!("*{}", y.space.cell_name(b)),
                        (None, None) => unreachable!(),
                    };
                    names[k].push(name);
                    parts[k].push((a, b));
                    index.insert((a, b), Cell::new(k, idx));
                }
            }
        }
    }
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); top + 1];
    for k in 0..=top {
        for &(a, b) in &parts[k] {
            let fs: Vec<FormalSimplex> = if k == 0 {
                Vec::new()
            } else {
                let la = a.map_or(-1, |c| c.dim as isize);
                (0..=k)
                    .map(|i| {
                        if (i as isize) <= la {
                            if la == 0 {
                                FormalSimplex::cell(index[&(None, b)])
                            } else {
                                let fa = x.space.face(i, &FormalSimplex::cell(a.unwrap()));
                                FormalSimplex {
                                    word: fa.word.clone(),
                                    base: index[&(Some(fa.base), b)],
                                }
                            }
                        } else {
                            let j = (i as isize - la - 1) as usize;
                            if b.map_or(0, |c| c.dim as usize) == 0 {
                                FormalSimplex::cell(index[&(a, None)])
                            } else {
                                let fb = y.space.face(j, &FormalSimplex::cell(b.unwrap()));
                                let word =
                                    fb.word.iter().map(|&w| w + (la + 1) as u8).collect();
                                FormalSimplex {
                                    word,
                                    base: index[&(a, Some(fb.base))],
                                }
                            }
                        }
                    })
                    .collect()
            };
            faces[k].push(fs);
        }
    }
    let space = FiniteSimplicialSet::new(top, names, faces);
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); top];
    for k in 1..=top {
        for (idx, &(a, b)) in parts[k].iter().enumerate() {
            let left_marked = a.map_or(false, |c| x.is_marked(&FormalSimplex::cell(c)));
            let right_marked = b.map_or(false, |c| y.is_marked(&FormalSimplex::cell(c)));
            if left_marked || right_marked {
                extra[k - 1].push(ExtraLabel {
                    anchor: FormalSimplex::cell(Cell::new(k, idx)),
                });
            }
        }
    }
    let mut object = Prestrat { space, extra };
    object.normalize();
    Ok(JoinStrat {
        object,
        parts,
        index,
    })
}

// ---------------------------------------------------------------------------
// Pushouts
// ---------------------------------------------------------------------------

/// A levelwise pushout in prestratified sets, along a monomorphism.
pub struct PushoutStrat {
    pub object: Prestrat,
    pub leg_x: StratMap,
    pub leg_b: StratMap,
}

/// Pushout of `f : A -> X` along a monomorphism `i : A -> B`, computed
/// levelwise on simplices and on labels.
pub fn pushout(
    a: &Prestrat,
    b: &Prestrat,
    x: &Prestrat,
    i: &StratMap,
    f: &StratMap,
) -> Result<PushoutStrat> {
    if !i.is_mono(a, b) {
        return Err(Error::NotMono("pushout requires a monomorphism".into()));
    }
    let x_big;
    let x = if x.dim() < b.dim() {
        x_big = x.with_dim(b.dim());
        &x_big
    } else {
        x
    };
    let po = pushout_along_mono(&a.space, &b.space, &x.space, &i.simp, &f.simp)?;
    let top = po.complex.dim();
    // stored labels of B hit by a stored label of A, with the A-index
    let mut hit: Vec<HashMap<u32, usize>> = vec![HashMap::new(); b.dim()];
    for m in 1..=a.dim() {
        for (ia, key) in i.labels[m - 1].iter().enumerate() {
            if let LabelKey::Extra(j) = key {
                hit[m - 1].insert(*j, ia);
            }
        }
    }
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); top];
    let mut from_x: Vec<HashMap<u32, u32>> = vec![HashMap::new(); top];
    let mut from_b: Vec<HashMap<u32, u32>> = vec![HashMap::new(); top];
    for m in 1..=top {
        let mut items: Vec<(FormalSimplex, bool, u32)> = Vec::new();
        for (j, l) in x.extras(m).iter().enumerate() {
            items.push((l.anchor.clone(), false, j as u32));
        }
        for (j, l) in b.extras(m).iter().enumerate() {
            if hit[m - 1].contains_key(&(j as u32)) {
                continue;
            }
            items.push((po.leg_b.image(&l.anchor), true, j as u32));
        }
        items.sort();
        for (pos, (anchor, is_b, j)) in items.iter().enumerate() {
            extra[m - 1].push(ExtraLabel {
                anchor: anchor.clone(),
            });
            if *is_b {
                from_b[m - 1].insert(*j, pos as u32);
            } else {
                from_x[m - 1].insert(*j, pos as u32);
            }
        }
    }
    let object = Prestrat {
        space: po.complex,
        extra,
    };
    let leg_x = StratMap {
        simp: po.leg_x,
        labels: (1..=x.dim())
            .map(|m| {
                (0..x.extras(m).len())
                    .map(|j| LabelKey::Extra(from_x[m - 1][&(j as u32)]))
                    .collect()
            })
            .collect(),
    };
    // labels of B: kept ones go to their new index; identified ones follow
    // their A-preimage through f and then into the pushout
    let leg_b_labels = (1..=b.dim())
        .map(|m| {
            (0..b.extras(m).len())
                .map(|j| {
                    if let Some(&pos) = from_b[m - 1].get(&(j as u32)) {
                        LabelKey::Extra(pos)
                    } else {
                        let ia = hit[m - 1][&(j as u32)];
                        match f.label_image(m, ia) {
                            LabelKey::Extra(jx) => LabelKey::Extra(from_x[m - 1][jx]),
                            LabelKey::Zeta(sig) => LabelKey::Zeta(sig.clone()),
                        }
                    }
                })
                .collect()
        })
        .collect();
    let leg_b = StratMap {
        simp: po.leg_b,
        labels: leg_b_labels,
    };
    Ok(PushoutStrat {
        object,
        leg_x,
        leg_b,
    })
}

/// Pushout in stratified sets: the levelwise pushout followed by the reflector.
pub fn pushout_strat(
    a: &Prestrat,
    b: &Prestrat,
    x: &Prestrat,
    i: &StratMap,
    f: &StratMap,
) -> Result<PushoutStrat> {
    let po = pushout(a, b, x, i, f)?;
    let refl = reflector(&po.object);
    let leg_x = po.leg_x.then(&refl.unit);
    let leg_b = po.leg_b.then(&refl.unit);
    Ok(PushoutStrat {
        object: refl.object,
        leg_x,
        leg_b,
    })
}

/// Disjoint union, with the two inclusions.
pub fn coproduct(x: &Prestrat, y: &Prestrat) -> (Prestrat, StratMap, StratMap) {
    let d = x.dim().max(y.dim());
    let x = x.with_dim(d);
    let y = y.with_dim(d);
    let empty = initial().with_dim(d);
    let no_map = StratMap {
        simp: SMap {
            images: vec![Vec::new(); d + 1],
        },
        labels: vec![Vec::new(); d],
    };
    let po = pushout(&empty, &y, &x, &no_map, &no_map).expect("coproduct");
    (po.object, po.leg_x, po.leg_b)
}

// ---------------------------------------------------------------------------
// Hom enumeration
// ---------------------------------------------------------------------------

/// Completeness flag for budgeted searches.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

/// All morphisms `A -> X`, by backtracking over cells in increasing dimension
/// and then over label assignments. Deterministic order. The budget counts
/// search-tree nodes.
pub fn enumerate_hom(a: &Prestrat, x: &Prestrat, budget: u64) -> (Vec<StratMap>, SearchStatus) {
    let x_big;
    let x = if x.dim() < a.dim() {
        x_big = x.with_dim(a.dim());
        &x_big
    } else {
        x
    };
    let mut cells: Vec<Cell> = Vec::new();
    for m in 0..=a.dim() {
        cells.extend(a.space.cells(m));
    }
    let formal: Vec<Vec<FormalSimplex>> = (0..=a.dim())
        .map(|m| x.space.formal_simplices(m))
        .collect();
    let mut out = Vec::new();
    let mut assigned: Vec<Vec<FormalSimplex>> = (0..=a.dim())
        .map(|m| Vec::with_capacity(a.space.cell_count(m)))
        .collect();
    let mut nodes: u64 = 0;
    let status = backtrack_cells(
        a,
        x,
        &cells,
        0,
        &formal,
        &mut assigned,
        &mut out,
        budget,
        &mut nodes,
    );
    (out, status)
}

#[allow(clippy::too_many_arguments)]
fn backtrack_cells(
    a: &Prestrat,
    x: &Prestrat,
    cells: &[Cell],
    pos: usize,
    formal: &[Vec<FormalSimplex>],
    assigned: &mut Vec<Vec<FormalSimplex>>,
    out: &mut Vec<StratMap>,
    budget: u64,
    nodes: &mut u64,
) -> SearchStatus {
    if pos == cells.len() {
        let simp = SMap {
            images: assigned.clone(),
        };
        expand_labels(a, x, simp, out);
        return SearchStatus::Complete;
    }
    let c = cells[pos];
    let m = c.dim as usize;
    for cand in &formal[m] {
        *nodes += 1;
        if *nodes > budget {
            return SearchStatus::BudgetExhausted;
        }
        let mut ok = true;
        if m > 0 {
            for i in 0..=m {
                let want = {
                    let f = a.space.stored_face(c, i);
                    let base_img = &assigned[f.base.dim as usize][f.base.idx as usize];
                    degenerate_word(&f.word, base_img)
                };
                if x.space.face(i, cand) != want {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        assigned[m].push(cand.clone());
        let st = backtrack_cells(a, x, cells, pos + 1, formal, assigned, out, budget, nodes);
        assigned[m].pop();
        if st == SearchStatus::BudgetExhausted {
            return st;
        }
    }
    SearchStatus::Complete
}

/// Extends a fully assigned simplicial map by every compatible label
/// assignment (none, when some marked simplex lands on an unmarked one).
fn expand_labels(a: &Prestrat, x: &Prestrat, simp: SMap, out: &mut Vec<StratMap>) {
    let mut choices: Vec<Vec<Vec<LabelKey>>> = Vec::with_capacity(a.dim());
    for m in 1..=a.dim() {
        let mut per_label = Vec::new();
        for l in a.extras(m) {
            let img = simp.image(&l.anchor);
            let cands = x.labels_at(&img);
            if cands.is_empty() {
                return;
            }
            per_label.push(cands);
        }
        choices.push(per_label);
    }
    let mut selection: Vec<Vec<usize>> = choices.iter().map(|per| vec![0; per.len()]).collect();
    loop {
        let labels: Vec<Vec<LabelKey>> = choices
            .iter()
            .zip(&selection)
            .map(|(per, sel)| {
                per.iter()
                    .zip(sel)
                    .map(|(cands, &i)| cands[i].clone())
                    .collect()
            })
            .collect();
        out.push(StratMap {
            simp: simp.clone(),
            labels,
        });
        // advance the mixed-radix counter over label choices
        let mut done = true;
        'adv: for (mi, per) in choices.iter().enumerate() {
            for (li, cands) in per.iter().enumerate() {
                if selection[mi][li] + 1 < cands.len() {
                    selection[mi][li] += 1;
                    for reset_m in 0..=mi {
                        let upto = if reset_m == mi { li } else { choices[reset_m].len() };
                        for r in 0..upto {
                            selection[reset_m][r] = 0;
                        }
                    }
                    done = false;
                    break 'adv;
                }
            }
        }
        if done {
            return;
        }
    }
}

/// The m-level of the internal hom `Z^Y`, or its marked variant: all maps
/// `Δ[m]_(t) × Y -> Z`.
pub fn internal_hom_level(
    y: &Prestrat,
    z: &Prestrat,
    m: usize,
    marked: bool,
    budget: u64,
) -> Result<(Vec<StratMap>, SearchStatus)> {
    let d = if marked { delta_t(m)? } else { delta(m) };
    let p = product_strat(&d, y, m + y.dim());
    Ok(enumerate_hom(&p.object, z, budget))
}

/// A relabeled copy of an object: cells permuted within each dimension by a
/// seeded shuffle, with the isomorphism onto the original. Verdicts of all
/// checks must be invariant under this.
pub fn relabel(x: &Prestrat, seed: u64) -> (Prestrat, StratMap) {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // perm[m][new] = old
    let perms: Vec<Vec<usize>> = (0..=x.dim())
        .map(|m| {
            let mut p: Vec<usize> = (0..x.space.cell_count(m)).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    let inv: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut q = vec![0; p.len()];
            for (new, &old) in p.iter().enumerate() {
                q[old] = new;
            }
            q
        })
        .collect();
    let translate = |f: &FormalSimplex| FormalSimplex {
        word: f.word.clone(),
        base: Cell::new(
            f.base.dim as usize,
            inv[f.base.dim as usize][f.base.idx as usize],
        ),
    };
    let mut names: Vec<Vec<String>> = Vec::with_capacity(x.dim() + 1);
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = Vec::with_capacity(x.dim() + 1);
    for m in 0..=x.dim() {
        let mut level_names = Vec::new();
        let mut level_faces = Vec::new();
        for new in 0..x.space.cell_count(m) {
            let old = Cell::new(m, perms[m][new]);
            level_names.push(x.space.cell_name(old).to_string());
            level_faces.push(if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| translate(x.space.stored_face(old, i)))
                    .collect()
            });
        }
        names.push(level_names);
        faces.push(level_faces);
    }
    let space = FiniteSimplicialSet::new(x.dim(), names, faces);
    let extra: Vec<Vec<ExtraLabel>> = (1..=x.dim())
        .map(|m| {
            x.extras(m)
                .iter()
                .map(|l| ExtraLabel {
                    anchor: translate(&l.anchor),
                })
                .collect()
        })
        .collect();
    let y = Prestrat::from_extras(space, extra);
    // the iso y -> x sends new cells back to old ones
    let images = (0..=x.dim())
        .map(|m| {
            (0..x.space.cell_count(m))
                .map(|new| FormalSimplex::cell(Cell::new(m, perms[m][new])))
                .collect()
        })
        .collect();
    let simp = SMap { images };
    let mut labels = Vec::with_capacity(x.dim());
    for m in 1..=x.dim() {
        let mut level = Vec::new();
        for l in y.extras(m) {
            let img = simp.image(&l.anchor);
            let key = x
                .labels_at(&img)
                .into_iter()
                .next()
                .expect("relabeled anchor stays marked");
            level.push(key);
        }
        labels.push(level);
    }
    let iso = StratMap { simp, labels };
    (y, iso)
}

/// Marked simplices of the target not hit by a marked simplex of the source
/// of an entire map, grouped by dimension.
pub fn marked_difference(
    e: &StratMap,
    src: &Prestrat,
    dst: &Prestrat,
) -> Result<Vec<(usize, Vec<FormalSimplex>)>> {
    if !e.is_entire(src, dst) {
        return Err(Error::NotEntire("marked_difference".into()));
    }
    let mut out = Vec::new();
    for m in 1..=dst.dim() {
        let mut hit: HashSet<FormalSimplex> = HashSet::new();
        for l in src.extras(m) {
            hit.insert(e.simp.image(&l.anchor));
        }
        let mut missing: Vec<FormalSimplex> = dst
            .extras(m)
            .iter()
            .map(|l| l.anchor.clone())
            .filter(|anch| !anch.is_degenerate() && !hit.contains(anch))
            .collect();
        missing.sort();
        missing.dedup();
        if !missing.is_empty() {
            out.push((m, missing));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::standard;

    #[test]
    fn flat_and_sharp() {
        let f = delta(3);
        assert!(f.is_stratified());
        assert_eq!(f.marked_nondegenerate_count(), 0);
        let s = Prestrat::sharp(standard(3));
        assert!(s.is_stratified());
        // 6 edges + 4 triangles + 1 tetrahedron
        assert_eq!(s.marked_profile(), vec![6, 4, 1]);
    }

    #[test]
    fn delta_t_marks_top() {
        let d = delta_t(2).unwrap();
        assert!(d.is_stratified());
        assert_eq!(d.marked_profile(), vec![0, 1]);
        assert!(d.is_marked(&FormalSimplex::cell(Cell::new(2, 0))));
    }

    #[test]
    fn reflector_collapses_double_marking() {
        // pushout of Δ[m]_t <- Δ[m] -> Δ[m]_t: two labels over the top simplex
        let m = 2;
        let dt = delta_t(m).unwrap();
        let d = delta(m);
        let phi = StratMap {
            simp: SMap::identity(&d.space),
            labels: vec![Vec::new(); m],
        };
        phi.validate(&d, &dt).unwrap();
        let po = pushout(&d, &dt, &dt, &phi, &phi).unwrap();
        assert!(!po.object.is_stratified());
        assert_eq!(po.object.extras(m).len(), 2);
        po.leg_x.validate(&dt, &po.object).unwrap();
        po.leg_b.validate(&dt, &po.object).unwrap();

        let r = reflector(&po.object);
        assert!(r.object.is_stratified());
        assert_eq!(r.object, dt);
        r.unit.validate(&po.object, &r.object).unwrap();

        let r2 = reflector(&r.object);
        assert_eq!(r2.object, r.object);
        assert!(r2.unit.is_iso(&r.object, &r2.object));
    }

    #[test]
    fn classification_examples() {
        let m = 2;
        let d = delta(m);
        let dt = delta_t(m).unwrap();
        let phi = StratMap {
            simp: SMap::identity(&d.space),
            labels: vec![Vec::new(); m],
        };
        phi.validate(&d, &dt).unwrap();
        assert_eq!(classify_mono(&phi, &d, &dt), MonoClass::Entire);

        let pt = delta(0).with_dim(1);
        let d1 = delta(1);
        let collapse = StratMap {
            simp: SMap {
                images: vec![
                    vec![
                        FormalSimplex::cell(Cell::new(0, 0)),
                        FormalSimplex::cell(Cell::new(0, 0)),
                    ],
                    vec![scomplex::degenerate_vertex(Cell::new(0, 0), 1)],
                ],
            },
            labels: vec![Vec::new()],
        };
        collapse.validate(&d1, &pt).unwrap();
        assert_eq!(classify_mono(&collapse, &d1, &pt), MonoClass::NotMono);
    }

    #[test]
    fn product_label_counts() {
        let dt = delta_t(1).unwrap();
        let p = product_strat(&dt, &dt, 2);
        // 3 labels per factor in dimension 1, so 9 label pairs in total; the
        // four pairs of degeneracy labels sit over the four degenerate edges
        // of the square and stay implicit
        assert_eq!(p.object.extras(1).len(), 5);
        let degenerate_edges = p
            .object
            .space
            .formal_simplices(1)
            .iter()
            .filter(|f| f.is_degenerate())
            .count();
        assert_eq!(p.object.extras(1).len() + degenerate_edges, 9);
        p.proj1.validate(&p.object, &dt).unwrap();
        p.proj2.validate(&p.object, &dt).unwrap();
        // both factors have every edge marked, so all five non-degenerate
        // edges of the square (including the diagonal) are marked
        let marked_nondeg = p
            .object
            .space
            .cells(1)
            .map(FormalSimplex::cell)
            .filter(|f| p.object.is_marked(f))
            .count();
        assert_eq!(marked_nondeg, 5);

        // the flat product is not flat: the two shuffle triangles are pairs
        // of degenerate simplices that are jointly non-degenerate, hence marked
        let d1 = delta(1);
        let pf = product_strat(&d1, &d1, 2);
        assert_eq!(pf.object.marked_profile(), vec![0, 2]);
        assert!(pf.object.is_stratified());
    }

    #[test]
    fn join_units() {
        let pt = delta(0);
        let j = join_strat(&pt, &pt).unwrap();
        assert_eq!(j.object.space, standard(1));
        let e = initial();
        let d3 = delta(3);
        let j2 = join_strat(&e, &d3).unwrap();
        assert_eq!(j2.object, d3);
    }

    #[test]
    fn join_of_standards_is_standard() {
        let j = join_strat(&delta(1), &delta(3)).unwrap();
        assert_eq!(j.object.space, standard(5));
        j.object.validate().unwrap();
    }

    #[test]
    fn hom_counts() {
        let (maps, st) = enumerate_hom(&delta(0), &delta(2), 10_000);
        assert_eq!(st, SearchStatus::Complete);
        assert_eq!(maps.len(), 3);
        let (maps, _) = enumerate_hom(&delta(1), &delta(1), 10_000);
        assert_eq!(maps.len(), 3);
        // Δ[1]_t -> Δ[1]: the marked edge must land on a degenerate edge
        let (maps, _) = enumerate_hom(&delta_t(1).unwrap(), &delta(1), 10_000);
        assert_eq!(maps.len(), 2);
    }

    #[test]
    fn internal_hom_examples() {
        let (maps, _) = internal_hom_level(&delta(1), &delta(1), 0, false, 1_000_000).unwrap();
        assert_eq!(maps.len(), 3);
        let (maps, _) = internal_hom_level(&delta(1), &delta(0), 1, false, 1_000_000).unwrap();
        assert_eq!(maps.len(), 1);
        // unit law: maps Δ[2] x Δ[0] -> Z are the 2-simplices of Z
        let (maps, _) = internal_hom_level(&delta(0), &delta(2), 2, false, 1_000_000).unwrap();
        assert_eq!(maps.len(), standard(2).formal_count(2));
    }

    #[test]
    fn marked_hom_level_injects_into_plain() {
        // for stratified Z, a lift of a map along φ x id is unique: the
        // marked internal-hom level injects into the plain one
        let pairs = [
            (delta(1), delta_t(1).unwrap()),
            (delta_t(1).unwrap(), delta_t(1).unwrap()),
            (delta(0), crate::shapes::delta3_eq()),
        ];
        for (y, z) in &pairs {
            assert!(z.is_stratified());
            for m in 1..=2usize {
                let (marked, _) = internal_hom_level(y, z, m, true, 10_000_000).unwrap();
                let (plain, _) = internal_hom_level(y, z, m, false, 10_000_000).unwrap();
                // restriction along the entire inclusion keeps the simplicial
                // part; distinct marked maps stay distinct there
                let mut restricted: Vec<&SMap> = marked.iter().map(|f| &f.simp).collect();
                restricted.sort_by(|a, b| format!("{:?}", a).cmp(&format!("{:?}", b)));
                restricted.dedup();
                assert_eq!(restricted.len(), marked.len());
                assert!(marked.len() <= plain.len());
            }
        }
    }

    #[test]
    fn entire_and_regular_compose() {
        let d1 = delta(1);
        let dt = delta_t(1).unwrap();
        let phi = crate::shapes::entire_inclusion(&d1, &dt).unwrap();
        // entire ∘ entire is entire on a doubled marking
        let mut extra = dt.extra.clone();
        extra[0].push(dt.extras(1)[0].clone());
        let dtt = Prestrat::from_extras(dt.space.clone(), extra);
        let phi2 = crate::shapes::entire_inclusion(&dt, &dtt).unwrap();
        let comp = phi.then(&phi2);
        assert!(comp.is_entire(&d1, &dtt));

        // regular ∘ regular is regular: a horn inside its simplex inside a cone
        let (h, t, inc) = crate::shapes::complicial_horn(1, 2).unwrap();
        assert!(inc.is_regular(&h, &t));
        let idt = StratMap::identity(&t);
        let comp2 = inc.then(&idt);
        assert!(comp2.is_regular(&h, &t));

        // iso iff entire + regular + label-surjective
        assert!(phi.is_entire(&d1, &dt) && !phi.is_regular(&d1, &dt));
        let ident = StratMap::identity(&dt);
        assert!(ident.is_entire(&dt, &dt) && ident.is_regular(&dt, &dt) && ident.is_iso(&dt, &dt));
    }

    #[test]
    fn relabel_preserves_structure() {
        let x = crate::shapes::delta3_eq();
        let (y, iso) = relabel(&x, 42);
        iso.validate(&y, &x).unwrap();
        assert!(iso.is_iso(&y, &x));
        assert_eq!(x.marked_profile(), y.marked_profile());
    }
}
