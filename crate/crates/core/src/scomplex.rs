//! Finite simplicial sets in Eilenberg–Zilber normal form.
//!
//! A complex stores only its non-degenerate simplices, dimension by dimension,
//! together with a face table. Every simplex of the complex is then written
//! uniquely as an iterated degeneracy `s_{i1} … s_{ik} b` of a non-degenerate
//! simplex `b`, with `i1 > i2 > … > ik` strictly decreasing; such a pair
//! (word, base) is a [`FormalSimplex`]. Monotone maps between finite ordinals
//! act contravariantly on formal simplices via [`FiniteSimplicialSet::apply_op`],
//! normalizing with the simplicial identities
//!
//! ```text
//! d_i s_j = s_{j-1} d_i   (i < j)
//! d_j s_j = id = d_{j+1} s_j
//! d_i s_j = s_j d_{i-1}   (i > j+1)
//! s_i s_j = s_{j+1} s_i   (i <= j)
//! ```
//!
//! Degenerate simplices exist formally in every dimension, so the recorded
//! `dim` bounds only the non-degenerate cells.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// Identifier of a non-degenerate simplex: dimension plus dense index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub dim: u8,
    pub idx: u32,
}

impl Cell {
    pub fn new(dim: usize, idx: usize) -> Self {
        Cell {
            dim: dim as u8,
            idx: idx as u32,
        }
    }
}

/// Eilenberg–Zilber normal form: a strictly decreasing degeneracy word
/// applied to a non-degenerate base simplex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FormalSimplex {
    /// Degeneracy indices, strictly decreasing; empty for a non-degenerate simplex.
    pub word: Vec<u8>,
    pub base: Cell,
}

impl FormalSimplex {
    pub fn cell(base: Cell) -> Self {
        FormalSimplex {
            word: Vec::new(),
            base,
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim as usize + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Whether the simplex lies in the image of `s_j`.
    ///
    /// For a normal form this holds exactly when `j` occurs in the word.
    pub fn degenerate_along(&self, j: u8) -> bool {
        self.word.contains(&j)
    }
}

/// A monotone map `[map.len()-1] -> [dst]` between finite ordinals,
/// acting contravariantly on simplices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialOperator {
    pub map: Vec<u8>,
    pub dst: u8,
}

impl SimplicialOperator {
    pub fn new(map: Vec<u8>, dst: usize) -> Result<Self> {
        let op = SimplicialOperator {
            map,
            dst: dst as u8,
        };
        if op.map.is_empty() || !op.is_monotone() || *op.map.last().unwrap() > op.dst {
            return Err(Error::MalformedInput(format!(
                "not a monotone map into [{}]: {:?}",
                dst, op.map
            )));
        }
        Ok(op)
    }

    pub fn identity(m: usize) -> Self {
        SimplicialOperator {
            map: (0..=m as u8).collect(),
            dst: m as u8,
        }
    }

    /// Coface `d^i : [m] -> [m+1]`, the injection skipping `i`.
    pub fn coface(i: usize, m: usize) -> Self {
        let map = (0..=m as u8)
            .map(|j| if (j as usize) < i { j } else { j + 1 })
            .collect();
        SimplicialOperator {
            map,
            dst: (m + 1) as u8,
        }
    }

    /// Codegeneracy `s^i : [m+1] -> [m]`, hitting `i` twice.
    pub fn codegeneracy(i: usize, m: usize) -> Self {
        let map = (0..=(m + 1) as u8)
            .map(|j| if (j as usize) <= i { j } else { j - 1 })
            .collect();
        SimplicialOperator {
            map,
            dst: m as u8,
        }
    }

    /// The inclusion of the ordinal spanned by `vertices` (sorted) into `[dst]`.
    pub fn inclusion(vertices: &[u8], dst: usize) -> Self {
        SimplicialOperator {
            map: vertices.to_vec(),
            dst: dst as u8,
        }
    }

    pub fn src_dim(&self) -> usize {
        self.map.len() - 1
    }

    pub fn dst_dim(&self) -> usize {
        self.dst as usize
    }

    pub fn is_monotone(&self) -> bool {
        self.map.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_injective(&self) -> bool {
        self.map.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut expect = 0u8;
        for &v in &self.map {
            if v == expect {
                expect += 1;
            } else if v > expect {
                return false;
            }
        }
        expect == self.dst + 1
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SimplicialOperator) -> Result<Self> {
        if other.dst_dim() != self.src_dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.src_dim(),
                self.dst_dim(),
                other.src_dim(),
                other.dst_dim()
            )));
        }
        Ok(SimplicialOperator {
            map: other.map.iter().map(|&v| self.map[v as usize]).collect(),
            dst: self.dst,
        })
    }

    /// Positions `j` with `map(j) = map(j+1)`; these form the degeneracy word
    /// of the surjective part, read in increasing order.
    pub fn collapse_positions(&self) -> Vec<u8> {
        (0..self.map.len() - 1)
            .filter(|&j| self.map[j] == self.map[j + 1])
            .map(|j| j as u8)
            .collect()
    }

    /// Values of `[dst]` not attained; the coface letters of the injective part.
    pub fn missing_values(&self) -> Vec<u8> {
        (0..=self.dst).filter(|v| !self.map.contains(v)).collect()
    }
}

/// Insert `s_j` on the outside of a normal degeneracy word.
pub fn insert_degeneracy(j: u8, word: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut pos = 0;
    // s_j s_k = s_{k+1} s_j for j <= k
    while pos < word.len() && j <= word[pos] {
        out.push(word[pos] + 1);
        pos += 1;
    }
    out.push(j);
    out.extend_from_slice(&word[pos..]);
    out
}

/// A finite simplicial set, truncated: no non-degenerate simplices above `dim`.
///
/// Equality is structural: same dimension, same cell counts, same face
/// tables. Cell names are presentation metadata and do not participate.
#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    dim: usize,
    /// `names[m]` lists the non-degenerate m-cells in construction order.
    names: Vec<Vec<String>>,
    /// `faces[m][idx][i]` is `d_i` of cell `idx` in dimension `m >= 1`.
    faces: Vec<Vec<Vec<FormalSimplex>>>,
}

impl PartialEq for FiniteSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && (0..=self.dim).all(|m| self.cell_count(m) == other.cell_count(m))
            && self.faces == other.faces
    }
}

impl Eq for FiniteSimplicialSet {}

impl FiniteSimplicialSet {
    pub fn new(dim: usize, names: Vec<Vec<String>>, faces: Vec<Vec<Vec<FormalSimplex>>>) -> Self {
        let mut s = FiniteSimplicialSet { dim, names, faces };
        s.names.resize(dim + 1, Vec::new());
        s.faces.resize(dim + 1, Vec::new());
        for m in 0..=dim {
            s.faces[m].resize(s.names[m].len(), Vec::new());
        }
        s
    }

    /// The complex with no simplices at all (the initial object).
    pub fn empty() -> Self {
        FiniteSimplicialSet::new(0, vec![Vec::new()], Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(|v| v.is_empty())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell_count(&self, m: usize) -> usize {
        if m <= self.dim {
            self.names[m].len()
        } else {
            0
        }
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    /// Non-degenerate counts per dimension, trailing zeros trimmed.
    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.names.iter().map(|v| v.len()).collect();
        while p.len() > 1 && *p.last().unwrap() == 0 {
            p.pop();
        }
        p
    }

    pub fn cell_name(&self, c: Cell) -> &str {
        &self.names[c.dim as usize][c.idx as usize]
    }

    pub fn cells(&self, m: usize) -> impl Iterator<Item = Cell> + '_ {
        let n = self.cell_count(m);
        (0..n).map(move |i| Cell::new(m, i))
    }

    pub fn find_cell(&self, m: usize, name: &str) -> Option<Cell> {
        self.names
            .get(m)?
            .iter()
            .position(|n| n == name)
            .map(|i| Cell::new(m, i))
    }

    pub fn stored_face(&self, c: Cell, i: usize) -> &FormalSimplex {
        &self.faces[c.dim as usize][c.idx as usize][i]
    }

    /// Append a cell; faces must be normal formal simplices of dimension `m-1`.
    pub fn push_cell(&mut self, m: usize, name: String, faces: Vec<FormalSimplex>) -> Cell {
        let idx = self.names[m].len();
        self.names[m].push(name);
        self.faces[m].push(faces);
        Cell::new(m, idx)
    }

    /// The same complex, re-truncated at a higher dimension.
    pub fn with_dim(&self, d: usize) -> Self {
        assert!(d >= self.dim);
        FiniteSimplicialSet::new(d, self.names.clone(), self.faces.clone())
    }

    /// `d_i` of a formal simplex, in normal form.
    pub fn face(&self, i: usize, x: &FormalSimplex) -> FormalSimplex {
        debug_assert!(i <= x.dim());
        if x.word.is_empty() {
            return self.faces[x.base.dim as usize][x.base.idx as usize][i].clone();
        }
        let j = x.word[0] as usize;
        let rest = FormalSimplex {
            word: x.word[1..].to_vec(),
            base: x.base,
        };
        if i < j {
            degenerate(j - 1, &self.face(i, &rest))
        } else if i == j || i == j + 1 {
            rest
        } else {
            degenerate(j, &self.face(i - 1, &rest))
        }
    }

    /// Contravariant action of a monotone map on a formal simplex.
    pub fn apply_op(&self, op: &SimplicialOperator, x: &FormalSimplex) -> Result<FormalSimplex> {
        if op.dst_dim() != x.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator into [{}] applied to a {}-simplex",
                op.dst_dim(),
                x.dim()
            )));
        }
        // Epi-mono factorization: faces for the missing values (largest first),
        // then degeneracies for the collapsed positions (smallest first).
        let mut y = x.clone();
        for &u in op.missing_values().iter().rev() {
            y = self.face(u as usize, &y);
        }
        for &j in op.collapse_positions().iter() {
            y = degenerate(j as usize, &y);
        }
        Ok(y)
    }

    /// All formal m-simplices, in a fixed order: by base dimension, base index,
    /// then degeneracy word.
    pub fn formal_simplices(&self, m: usize) -> Vec<FormalSimplex> {
        let mut out = Vec::new();
        for p in 0..=m.min(self.dim) {
            for idx in 0..self.cell_count(p) {
                for word in descending_words(m - p, m) {
                    out.push(FormalSimplex {
                        word,
                        base: Cell::new(p, idx),
                    });
                }
            }
        }
        out
    }

    pub fn formal_count(&self, m: usize) -> usize {
        (0..=m.min(self.dim))
            .map(|p| self.cell_count(p) * binomial(m, m - p))
            .sum()
    }

    /// Checks face-table well-formedness and the simplicial identity
    /// `d_i d_j = d_{j-1} d_i` for `i < j` on every cell.
    pub fn validate(&self) -> Result<()> {
        for m in 0..=self.dim {
            for idx in 0..self.cell_count(m) {
                let c = Cell::new(m, idx);
                if m == 0 {
                    if !self.faces[0].get(idx).map_or(true, |f| f.is_empty()) {
                        return Err(Error::MalformedInput(format!(
                            "vertex {} has faces",
                            self.cell_name(c)
                        )));
                    }
                    continue;
                }
                let fs = &self.faces[m][idx];
                if fs.len() != m + 1 {
                    return Err(Error::MalformedInput(format!(
                        "cell {} of dimension {} has {} faces",
                        self.cell_name(c),
                        m,
                        fs.len()
                    )));
                }
                for f in fs {
                    if f.dim() != m - 1 {
                        return Err(Error::MalformedInput(format!(
                            "face of {} has dimension {}",
                            self.cell_name(c),
                            f.dim()
                        )));
                    }
                    if !f.word.windows(2).all(|w| w[0] > w[1]) {
                        return Err(Error::MalformedInput(format!(
                            "face word of {} is not strictly decreasing",
                            self.cell_name(c)
                        )));
                    }
                    let (bd, bi) = (f.base.dim as usize, f.base.idx as usize);
                    if bd > self.dim || bi >= self.cell_count(bd) {
                        return Err(Error::MalformedInput(format!(
                            "face of {} references a missing cell",
                            self.cell_name(c)
                        )));
                    }
                }
                if m >= 2 {
                    let top = FormalSimplex::cell(c);
                    for j in 1..=m {
                        for i in 0..j {
                            let lhs = self.face(i, &self.face(j, &top));
                            let rhs = self.face(j - 1, &self.face(i, &top));
                            if lhs != rhs {
                                return Err(Error::MalformedInput(format!(
                                    "simplicial identity d_{} d_{} fails on {}",
                                    i,
                                    j,
                                    self.cell_name(c)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, f: &FormalSimplex) -> String {
        let mut s = String::new();
        for j in &f.word {
            s.push_str(&format!("s{}", j));
        }
        if !f.word.is_empty() {
            s.push('.');
        }
        s.push_str(self.cell_name(f.base));
        s
    }
}

/// `s_j` applied to a formal simplex.
pub fn degenerate(j: usize, x: &FormalSimplex) -> FormalSimplex {
    FormalSimplex {
        word: insert_degeneracy(j as u8, &x.word),
        base: x.base,
    }
}

/// `s_w` applied to a formal simplex, `w` a normal word (outermost first).
pub fn degenerate_word(w: &[u8], x: &FormalSimplex) -> FormalSimplex {
    let mut y = x.clone();
    for &j in w.iter().rev() {
        y = degenerate(j as usize, &y);
    }
    y
}

/// The fully degenerate m-simplex over a vertex.
pub fn degenerate_vertex(v: Cell, m: usize) -> FormalSimplex {
    FormalSimplex {
        word: (0..m as u8).rev().collect(),
        base: v,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All strictly decreasing words of length `len` with entries `< upper`.
fn descending_words(len: usize, upper: usize) -> Vec<Vec<u8>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if len > upper {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut combo: Vec<u8> = (0..len as u8).collect();
    loop {
        let mut w = combo.clone();
        w.reverse();
        out.push(w);
        // next ascending combination below `upper`
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (combo[i] as usize) < upper - (len - i) {
                combo[i] += 1;
                for j in i + 1..len {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A simplicial map, stored as the images of the non-degenerate cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SMap {
    /// `images[m][idx]` is the image of cell `idx` of dimension `m`.
    pub images: Vec<Vec<FormalSimplex>>,
}

impl SMap {
    pub fn identity(x: &FiniteSimplicialSet) -> Self {
        SMap {
            images: (0..=x.dim())
                .map(|m| x.cells(m).map(FormalSimplex::cell).collect())
                .collect(),
        }
    }

    pub fn image_of_cell(&self, c: Cell) -> &FormalSimplex {
        &self.images[c.dim as usize][c.idx as usize]
    }

    /// Image of a formal simplex: degeneracy word pushed onto the base image.
    pub fn image(&self, x: &FormalSimplex) -> FormalSimplex {
        degenerate_word(&x.word, self.image_of_cell(x.base))
    }

    /// Composition `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &SMap) -> SMap {
        SMap {
            images: self
                .images
                .iter()
                .map(|level| level.iter().map(|f| other.image(f)).collect())
                .collect(),
        }
    }

    /// Checks compatibility with all face maps.
    pub fn validate(&self, src: &FiniteSimplicialSet, dst: &FiniteSimplicialSet) -> Result<()> {
        if self.images.len() < src.dim() + 1
            || (0..=src.dim()).any(|m| self.images[m].len() != src.cell_count(m))
        {
            return Err(Error::MalformedInput(
                "simplicial map does not cover the source cells".into(),
            ));
        }
        for m in 0..=src.dim() {
            for idx in 0..src.cell_count(m) {
                let c = Cell::new(m, idx);
                let im = self.image_of_cell(c);
                if im.dim() != m {
                    return Err(Error::MalformedInput(format!(
                        "image of {} has dimension {}",
                        src.cell_name(c),
                        im.dim()
                    )));
                }
                for i in 0..=m {
                    if m == 0 {
                        continue;
                    }
                    let lhs = self.image(src.stored_face(c, i));
                    let rhs = dst.face(i, im);
                    if lhs != rhs {
                        return Err(Error::MalformedInput(format!(
                            "map does not commute with d_{} on {}",
                            i,
                            src.cell_name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Levelwise injectivity. Holds exactly when each non-degenerate cell maps
    /// to a non-degenerate cell and the cell assignment is injective per dimension.
    pub fn is_mono(&self, src: &FiniteSimplicialSet) -> bool {
        for m in 0..=src.dim() {
            let level = &self.images[m];
            if level.iter().any(|f| f.is_degenerate()) {
                return false;
            }
            let mut seen: Vec<&FormalSimplex> = level.iter().collect();
            seen.sort();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// Levelwise bijectivity on simplices.
    pub fn is_iso(&self, src: &FiniteSimplicialSet, dst: &FiniteSimplicialSet) -> bool {
        self.is_mono(src) && (0..=src.dim().max(dst.dim())).all(|m| src.cell_count(m) == dst.cell_count(m))
    }
}

/// The standard simplex Δ[m]: non-degenerate p-simplices are the
/// (p+1)-subsets of {0,…,m}.
pub fn standard(m: usize) -> FiniteSimplicialSet {
    subset_complex(m, m + 1, |_| true)
}

/// The boundary ∂Δ[m]: all proper subsets.
pub fn boundary(m: usize) -> FiniteSimplicialSet {
    if m == 0 {
        return FiniteSimplicialSet::empty();
    }
    subset_complex(m - 1, m + 1, |s: &[u8]| s.len() < m + 1)
}

/// The k-horn Λ^k[m]: proper subsets other than {0..m}∖{k}.
pub fn horn(k: usize, m: usize) -> Result<FiniteSimplicialSet> {
    if m < 1 || k > m {
        return Err(Error::IndexRange(format!("horn({}, {})", k, m)));
    }
    let facet: Vec<u8> = (0..=m as u8).filter(|&v| v as usize != k).collect();
    Ok(subset_complex(m - 1, m + 1, |s: &[u8]| {
        s.len() < m + 1 && s != facet
    }))
}

/// Builds the sub-complex of a simplex with `n_vertices` vertices spanned by
/// the subsets accepted by `keep`, assuming downward closure. `top_dim`
/// bounds the stored dimensions.
fn subset_complex(
    top_dim: usize,
    n_vertices: usize,
    keep: impl Fn(&[u8]) -> bool,
) -> FiniteSimplicialSet {
    let m = top_dim;
    let mut names: Vec<Vec<String>> = vec![Vec::new(); m + 1];
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); m + 1];
    let mut index: HashMap<Vec<u8>, Cell> = HashMap::new();
    for p in 0..=m {
        for subset in subsets_of_size(n_vertices, p + 1) {
            if !keep(&subset) {
                continue;
            }
            let idx = names[p].len();
            names[p].push(subset_name(&subset));
            let fs = if p == 0 {
                Vec::new()
            } else {
                (0..=p)
                    .map(|i| {
                        let mut f = subset.clone();
                        f.remove(i);
                        FormalSimplex::cell(index[&f])
                    })
                    .collect()
            };
            faces[p].push(fs);
            index.insert(subset, Cell::new(p, idx));
        }
    }
    FiniteSimplicialSet::new(m, names, faces)
}

fn subsets_of_size(upper: usize, size: usize) -> Vec<Vec<u8>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if size > upper {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut combo: Vec<u8> = (0..size as u8).collect();
    loop {
        out.push(combo.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (combo[i] as usize) < upper - (size - i) {
                combo[i] += 1;
                for j in i + 1..size {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn subset_name(subset: &[u8]) -> String {
    if subset.iter().all(|&v| v < 10) {
        subset.iter().map(|v| v.to_string()).collect()
    } else {
        subset
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Looks up the cell of a subset-built complex (standard, boundary, horn).
pub fn subset_cell(x: &FiniteSimplicialSet, subset: &[u8]) -> Option<Cell> {
    x.find_cell(subset.len() - 1, &subset_name(subset))
}

/// In a subset-built complex, the vertex list of each cell, recovered from its name.
pub fn cell_vertices(x: &FiniteSimplicialSet, c: Cell) -> Vec<u8> {
    let name = x.cell_name(c);
    if name.contains(',') {
        name.split(',').map(|v| v.parse().unwrap()).collect()
    } else {
        name.bytes().map(|b| b - b'0').collect()
    }
}

/// The map Δ[m] -> X classified by an m-simplex of X.
pub fn map_from_standard(
    src: &FiniteSimplicialSet,
    dst: &FiniteSimplicialSet,
    top: &FormalSimplex,
) -> Result<SMap> {
    let m = top.dim();
    let mut images: Vec<Vec<FormalSimplex>> = vec![Vec::new(); src.dim() + 1];
    for p in 0..=src.dim() {
        for c in src.cells(p) {
            let vs = cell_vertices(src, c);
            let op = SimplicialOperator::inclusion(&vs, m);
            images[p].push(dst.apply_op(&op, top)?);
        }
    }
    Ok(SMap { images })
}

/// Outcome of a levelwise pushout along a monomorphism.
pub struct Pushout {
    pub complex: FiniteSimplicialSet,
    pub leg_x: SMap,
    pub leg_b: SMap,
    /// For each dimension, the B-cells that were added (not in the image of A),
    /// in the order they were appended after the X-cells.
    pub added: Vec<Vec<Cell>>,
}

/// Pushout of `f : A -> X` along a levelwise monomorphism `i : A -> B` in
/// simplicial sets: new cells are `B ∖ i(A)`, glued over X.
pub fn pushout_along_mono(
    a: &FiniteSimplicialSet,
    b: &FiniteSimplicialSet,
    x: &FiniteSimplicialSet,
    i: &SMap,
    f: &SMap,
) -> Result<Pushout> {
    if !i.is_mono(a) {
        return Err(Error::NotMono(
            "pushout requires a levelwise injective map".into(),
        ));
    }
    if b.dim() > x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "pushout target of dimension {} cannot absorb cells of dimension {}",
            x.dim(),
            b.dim()
        )));
    }
    // image of i on non-degenerate cells of B, with the A-preimage
    let mut from_a: HashMap<Cell, Cell> = HashMap::new();
    for m in 0..=a.dim() {
        for c in a.cells(m) {
            from_a.insert(i.image_of_cell(c).base, c);
        }
    }
    let mut names: Vec<Vec<String>> = (0..=x.dim()).map(|m| (0..x.cell_count(m)).map(|j| x.cell_name(Cell::new(m, j)).to_string()).collect()).collect();
    let mut added: Vec<Vec<Cell>> = vec![Vec::new(); b.dim() + 1];
    let mut b_target: HashMap<Cell, FormalSimplex> = HashMap::new();
    for m in 0..=b.dim() {
        for c in b.cells(m) {
            if let Some(&ac) = from_a.get(&c) {
                b_target.insert(c, f.image_of_cell(ac).clone());
            } else {
                let idx = names[m].len();
                let mut name = b.cell_name(c).to_string();
                while names[m].contains(&name) {
                    name.push('\'');
                }
                names[m].push(name);
                added[m].push(c);
                b_target.insert(c, FormalSimplex::cell(Cell::new(m, idx)));
            }
        }
    }
    let translate = |fs: &FormalSimplex| -> FormalSimplex {
        let t = &b_target[&fs.base];
        degenerate_word(&fs.word, t)
    };
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = (0..=x.dim())
        .map(|m| {
            (0..x.cell_count(m))
                .map(|j| {
                    (0..if m == 0 { 0 } else { m + 1 })
                        .map(|i2| x.stored_face(Cell::new(m, j), i2).clone())
                        .collect()
                })
                .collect()
        })
        .collect();
    for m in 1..=b.dim() {
        for &c in &added[m] {
            let fs = (0..=m)
                .map(|i2| translate(b.stored_face(c, i2)))
                .collect();
            faces[m].push(fs);
        }
    }
    for &c in &added[0] {
        let _ = c;
        faces[0].push(Vec::new());
    }
    let complex = FiniteSimplicialSet::new(x.dim(), names, faces);
    let leg_x = SMap::identity(x);
    let leg_b = SMap {
        images: (0..=b.dim())
            .map(|m| b.cells(m).map(|c| b_target[&c].clone()).collect())
            .collect(),
    };
    Ok(Pushout {
        complex,
        leg_x,
        leg_b,
        added,
    })
}

/// The product of two complexes, with projection maps and a cell index.
pub struct Product {
    pub complex: FiniteSimplicialSet,
    /// `pairs[m][idx]`: the component formal simplices of each product cell.
    pub pairs: Vec<Vec<(FormalSimplex, FormalSimplex)>>,
    pub index: HashMap<(FormalSimplex, FormalSimplex), Cell>,
    pub proj1: SMap,
    pub proj2: SMap,
}

impl Product {
    /// Normal form of a pair of formal simplices as a product simplex:
    /// strip the common degeneracies, largest first.
    pub fn normalize_pair(
        &self,
        x: &FiniteSimplicialSet,
        y: &FiniteSimplicialSet,
        fx: &FormalSimplex,
        fy: &FormalSimplex,
    ) -> FormalSimplex {
        let (word, bx, by) = strip_common(x, y, fx, fy);
        let base = self.index[&(bx, by)];
        FormalSimplex { word, base }
    }
}

/// Shared degeneracy extraction: returns (common word, reduced pair).
pub fn strip_common(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    fx: &FormalSimplex,
    fy: &FormalSimplex,
) -> (Vec<u8>, FormalSimplex, FormalSimplex) {
    let mut fx = fx.clone();
    let mut fy = fy.clone();
    let mut word = Vec::new();
    loop {
        let common: Option<u8> = fx
            .word
            .iter()
            .copied()
            .filter(|j| fy.word.contains(j))
            .max();
        match common {
            None => break,
            Some(j) => {
                fx = x.face(j as usize, &fx);
                fy = y.face(j as usize, &fy);
                word.push(j);
            }
        }
    }
    (word, fx, fy)
}

/// Levelwise product, keeping non-degenerate cells up to `cap`.
pub fn product(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, cap: usize) -> Product {
    let top = (x.dim() + y.dim()).min(cap);
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut pairs: Vec<Vec<(FormalSimplex, FormalSimplex)>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<(FormalSimplex, FormalSimplex), Cell> = HashMap::new();
    for m in 0..=top {
        for fx in x.formal_simplices(m) {
            for fy in y.formal_simplices(m) {
                if fx.word.iter().any(|j| fy.word.contains(j)) {
                    continue;
                }
                let idx = names[m].len();
                names[m].push(format!("({}|{})", x.render(&fx), y.render(&fy)));
                index.insert((fx.clone(), fy.clone()), Cell::new(m, idx));
                pairs[m].push((fx.clone(), fy.clone()));
            }
        }
    }
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); top + 1];
    for m in 0..=top {
        for (fx, fy) in &pairs[m] {
            let fs = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let dx = x.face(i, fx);
                        let dy = y.face(i, fy);
                        let (word, bx, by) = strip_common(x, y, &dx, &dy);
                        FormalSimplex {
                            word,
                            base: index[&(bx, by)],
                        }
                    })
                    .collect()
            };
            faces[m].push(fs);
        }
    }
    let complex = FiniteSimplicialSet::new(top, names, faces);
    let proj1 = SMap {
        images: pairs
            .iter()
            .map(|level| level.iter().map(|(fx, _)| fx.clone()).collect())
            .collect(),
    };
    let proj2 = SMap {
        images: pairs
            .iter()
            .map(|level| level.iter().map(|(_, fy)| fy.clone()).collect())
            .collect(),
    };
    Product {
        complex,
        pairs,
        index,
        proj1,
        proj2,
    }
}

impl fmt::Display for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "complex dim {} profile {:?}", self.dim, self.profile())
    }
}
