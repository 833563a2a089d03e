//! The canonical on-disk formats: stratified objects, maps, and categories.
//!
//! An object document lists the non-degenerate cells per dimension, a face
//! table keyed by cell name, and per-dimension label lists. Degeneracy labels
//! are written out explicitly with kind `zeta`, one per degenerate simplex up
//! to the truncation dimension; reading validates that the zeta structure is
//! exactly that, so a document with a missing, duplicated, or misanchored
//! degeneracy label is rejected. Serialization is deterministic, so equal
//! objects produce byte-identical documents.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::nerve::{FiniteCategory, Morphism};
use crate::scomplex::{Cell, FiniteSimplicialSet, FormalSimplex, SMap};
use crate::strat::{ExtraLabel, LabelKey, Prestrat, StratMap};
use crate::{Error, Result};

pub const STRAT_FORMAT: &str = "strat-v1";
pub const MAP_FORMAT: &str = "strat-map-v1";
pub const CATEGORY_FORMAT: &str = "category-v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormalDoc {
    pub word: Vec<u8>,
    pub base: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelDoc {
    pub name: String,
    pub anchor: FormalDoc,
    pub kind: String,
}

/// The document form of a prestratified simplicial set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratDoc {
    pub format: String,
    pub dim: usize,
    /// `cells[m]` lists cell names; names are unique across all dimensions
    pub cells: Vec<Vec<String>>,
    /// `faces[name][i]` for every cell of positive dimension
    pub faces: Vec<(String, Vec<FormalDoc>)>,
    /// `labels[m-1]` lists the labels in dimension m
    pub labels: Vec<Vec<LabelDoc>>,
}

/// The document form of a morphism, with both endpoints inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDoc {
    pub format: String,
    pub source: StratDoc,
    pub target: StratDoc,
    /// image of each source cell
    pub cells: Vec<(String, FormalDoc)>,
    /// image of each stored source label, by name
    pub labels: Vec<(String, String)>,
}

/// The document form of a finite category.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub format: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: Vec<(String, String)>,
    /// entries `[g, f, h]` meaning `g ∘ f = h`
    pub composition: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
}

fn formal_doc(x: &FiniteSimplicialSet, f: &FormalSimplex) -> FormalDoc {
    FormalDoc {
        word: f.word.clone(),
        base: x.cell_name(f.base).to_string(),
    }
}

/// The canonical name of a label: degeneracy labels are named after their
/// anchor, stored labels carry their index.
pub fn label_name(x: &Prestrat, m: usize, key: &LabelKey) -> String {
    match key {
        LabelKey::Zeta(f) => format!("z:{}", x.space.render(f)),
        LabelKey::Extra(i) => format!(
            "x{}:{}",
            i,
            x.space.render(&x.extras(m)[*i as usize].anchor)
        ),
    }
}

pub fn strat_to_doc(x: &Prestrat) -> StratDoc {
    let mut cells = Vec::new();
    let mut faces = Vec::new();
    for m in 0..=x.dim() {
        let mut level = Vec::new();
        for c in x.space.cells(m) {
            let name = x.space.cell_name(c).to_string();
            if m >= 1 {
                let fs = (0..=m)
                    .map(|i| formal_doc(&x.space, x.space.stored_face(c, i)))
                    .collect();
                faces.push((name.clone(), fs));
            }
            level.push(name);
        }
        cells.push(level);
    }
    let mut labels = Vec::new();
    for m in 1..=x.dim() {
        let mut level = Vec::new();
        for f in x.space.formal_simplices(m) {
            if f.is_degenerate() {
                level.push(LabelDoc {
                    name: label_name(x, m, &LabelKey::Zeta(f.clone())),
                    anchor: formal_doc(&x.space, &f),
                    kind: "zeta".into(),
                });
            }
        }
        for (i, l) in x.extras(m).iter().enumerate() {
            level.push(LabelDoc {
                name: label_name(x, m, &LabelKey::Extra(i as u32)),
                anchor: formal_doc(&x.space, &l.anchor),
                kind: "extra".into(),
            });
        }
        labels.push(level);
    }
    StratDoc {
        format: STRAT_FORMAT.into(),
        dim: x.dim(),
        cells,
        faces,
        labels,
    }
}

/// Parses and fully validates a document: simplicial identities, anchors,
/// and the degeneracy-label structure.
pub fn strat_from_doc(doc: &StratDoc) -> Result<Prestrat> {
    if doc.format != STRAT_FORMAT {
        return Err(Error::MalformedInput(format!(
            "expected format {}, found {}",
            STRAT_FORMAT, doc.format
        )));
    }
    if doc.cells.len() != doc.dim + 1 {
        return Err(Error::MalformedInput(
            "cell table does not match the stated dimension".into(),
        ));
    }
    let mut by_name: HashMap<&str, Cell> = HashMap::new();
    for (m, level) in doc.cells.iter().enumerate() {
        for (i, name) in level.iter().enumerate() {
            if by_name.insert(name, Cell::new(m, i)).is_some() {
                return Err(Error::MalformedInput(format!("duplicate cell `{}`", name)));
            }
        }
    }
    let parse_formal = |fd: &FormalDoc, expected_dim: usize| -> Result<FormalSimplex> {
        let base = *by_name
            .get(fd.base.as_str())
            .ok_or_else(|| Error::MalformedInput(format!("unknown cell `{}`", fd.base)))?;
        let f = FormalSimplex {
            word: fd.word.clone(),
            base,
        };
        if !f.word.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::MalformedInput(format!(
                "word {:?} is not strictly decreasing",
                f.word
            )));
        }
        if f.dim() != expected_dim {
            return Err(Error::MalformedInput(format!(
                "formal simplex {}{:?} has dimension {}, expected {}",
                fd.base,
                fd.word,
                f.dim(),
                expected_dim
            )));
        }
        Ok(f)
    };
    let face_table: HashMap<&str, &Vec<FormalDoc>> =
        doc.faces.iter().map(|(n, f)| (n.as_str(), f)).collect();
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); doc.dim + 1];
    for (m, level) in doc.cells.iter().enumerate() {
        for name in level {
            if m == 0 {
                faces[0].push(Vec::new());
                continue;
            }
            let fd = face_table.get(name.as_str()).ok_or_else(|| {
                Error::MalformedInput(format!("missing face table for `{}`", name))
            })?;
            if fd.len() != m + 1 {
                return Err(Error::MalformedInput(format!(
                    "cell `{}` has {} faces, expected {}",
                    name,
                    fd.len(),
                    m + 1
                )));
            }
            faces[m].push(
                fd.iter()
                    .map(|f| parse_formal(f, m - 1))
                    .collect::<Result<_>>()?,
            );
        }
    }
    let space = FiniteSimplicialSet::new(doc.dim, doc.cells.clone(), faces);
    space.validate()?;
    // labels: the zeta structure must be exactly one correctly anchored
    // degeneracy label per degenerate simplex
    if doc.labels.len() != doc.dim {
        return Err(Error::MalformedInput(
            "label table does not match the stated dimension".into(),
        ));
    }
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); doc.dim];
    for (m1, level) in doc.labels.iter().enumerate() {
        let m = m1 + 1;
        let mut zeta_seen: HashMap<FormalSimplex, usize> = HashMap::new();
        for l in level {
            let anchor = parse_formal(&l.anchor, m)?;
            match l.kind.as_str() {
                "zeta" => {
                    if !anchor.is_degenerate() {
                        return Err(Error::MalformedInput(format!(
                            "degeneracy label `{}` anchored at a non-degenerate simplex",
                            l.name
                        )));
                    }
                    *zeta_seen.entry(anchor).or_insert(0) += 1;
                }
                "extra" => extra[m1].push(ExtraLabel { anchor }),
                other => {
                    return Err(Error::MalformedInput(format!(
                        "unknown label kind `{}`",
                        other
                    )));
                }
            }
        }
        for f in space.formal_simplices(m) {
            if !f.is_degenerate() {
                continue;
            }
            match zeta_seen.get(&f) {
                Some(1) => {}
                Some(k) => {
                    return Err(Error::MalformedInput(format!(
                        "degenerate simplex {} carries {} degeneracy labels",
                        space.render(&f),
                        k
                    )));
                }
                None => {
                    return Err(Error::MalformedInput(format!(
                        "degenerate simplex {} is missing its degeneracy label",
                        space.render(&f)
                    )));
                }
            }
        }
        if zeta_seen.len()
            != space
                .formal_simplices(m)
                .iter()
                .filter(|f| f.is_degenerate())
                .count()
        {
            return Err(Error::MalformedInput(
                "degeneracy label anchored outside the complex".into(),
            ));
        }
    }
    let x = Prestrat::from_extras(space, extra);
    x.validate()?;
    Ok(x)
}

pub fn map_to_doc(src: &Prestrat, dst: &Prestrat, f: &StratMap) -> MapDoc {
    let mut cells = Vec::new();
    for m in 0..=src.dim() {
        for c in src.space.cells(m) {
            cells.push((
                src.space.cell_name(c).to_string(),
                formal_doc(&dst.space, f.simp.image_of_cell(c)),
            ));
        }
    }
    let mut labels = Vec::new();
    for m in 1..=src.dim() {
        for i in 0..src.extras(m).len() {
            labels.push((
                label_name(src, m, &LabelKey::Extra(i as u32)),
                label_name(dst, m, f.label_image(m, i)),
            ));
        }
    }
    MapDoc {
        format: MAP_FORMAT.into(),
        source: strat_to_doc(src),
        target: strat_to_doc(dst),
        cells,
        labels,
    }
}

/// Parses a map document, re-validating the morphism.
pub fn map_from_doc(doc: &MapDoc) -> Result<(Prestrat, Prestrat, StratMap)> {
    if doc.format != MAP_FORMAT {
        return Err(Error::MalformedInput(format!(
            "expected format {}, found {}",
            MAP_FORMAT, doc.format
        )));
    }
    let src = strat_from_doc(&doc.source)?;
    let dst = strat_from_doc(&doc.target)?;
    let cell_img: HashMap<&str, &FormalDoc> =
        doc.cells.iter().map(|(n, f)| (n.as_str(), f)).collect();
    let mut images = Vec::with_capacity(src.dim() + 1);
    for m in 0..=src.dim() {
        let mut level = Vec::new();
        for c in src.space.cells(m) {
            let name = src.space.cell_name(c);
            let fd = cell_img
                .get(name)
                .ok_or_else(|| Error::MalformedInput(format!("missing image of `{}`", name)))?;
            let base = dst
                .space
                .find_cell(
                    m.checked_sub(fd.word.len()).ok_or_else(|| {
                        Error::MalformedInput(format!("image word too long for `{}`", name))
                    })?,
                    &fd.base,
                )
                .ok_or_else(|| {
                    Error::MalformedInput(format!("unknown target cell `{}`", fd.base))
                })?;
            level.push(FormalSimplex {
                word: fd.word.clone(),
                base,
            });
        }
        images.push(level);
    }
    // label names of the target, resolved per dimension
    let mut target_keys: Vec<HashMap<String, LabelKey>> = Vec::with_capacity(dst.dim());
    for m in 1..=dst.dim() {
        let mut map = HashMap::new();
        for f in dst.space.formal_simplices(m) {
            if f.is_degenerate() {
                let k = LabelKey::Zeta(f);
                map.insert(label_name(&dst, m, &k), k);
            }
        }
        for i in 0..dst.extras(m).len() {
            let k = LabelKey::Extra(i as u32);
            map.insert(label_name(&dst, m, &k), k);
        }
        target_keys.push(map);
    }
    let label_img: HashMap<&str, &str> = doc
        .labels
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let mut labels = Vec::with_capacity(src.dim());
    for m in 1..=src.dim() {
        let mut level = Vec::new();
        for i in 0..src.extras(m).len() {
            let name = label_name(&src, m, &LabelKey::Extra(i as u32));
            let target_name = label_img.get(name.as_str()).ok_or_else(|| {
                Error::MalformedInput(format!("missing image of label `{}`", name))
            })?;
            let key = target_keys
                .get(m - 1)
                .and_then(|t| t.get(*target_name))
                .ok_or_else(|| {
                    Error::MalformedInput(format!("unknown target label `{}`", target_name))
                })?;
            level.push(key.clone());
        }
        labels.push(level);
    }
    let f = StratMap {
        simp: SMap { images },
        labels,
    };
    f.validate(&src, &dst)?;
    Ok((src, dst, f))
}

pub fn category_to_doc(cat: &FiniteCategory) -> CategoryDoc {
    CategoryDoc {
        format: CATEGORY_FORMAT.into(),
        objects: cat.objects.clone(),
        morphisms: cat
            .morphisms
            .iter()
            .map(|m| MorphismDoc {
                name: m.name.clone(),
                src: cat.objects[m.src].clone(),
                dst: cat.objects[m.dst].clone(),
            })
            .collect(),
        identities: cat
            .identities
            .iter()
            .enumerate()
            .map(|(o, &i)| (cat.objects[o].clone(), cat.morphisms[i].name.clone()))
            .collect(),
        composition: {
            let mut rows: Vec<[String; 3]> = cat
                .composition
                .iter()
                .map(|(&(g, f), &h)| {
                    [
                        cat.morphisms[g].name.clone(),
                        cat.morphisms[f].name.clone(),
                        cat.morphisms[h].name.clone(),
                    ]
                })
                .collect();
            rows.sort();
            rows
        },
    }
}

pub fn category_from_doc(doc: &CategoryDoc) -> Result<FiniteCategory> {
    if doc.format != CATEGORY_FORMAT {
        return Err(Error::MalformedInput(format!(
            "expected format {}, found {}",
            CATEGORY_FORMAT, doc.format
        )));
    }
    let obj_index: HashMap<&str, usize> = doc
        .objects
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mor_index: HashMap<&str, usize> = doc
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.name.as_str(), i))
        .collect();
    let look_obj = |n: &str| {
        obj_index
            .get(n)
            .copied()
            .ok_or_else(|| Error::MalformedInput(format!("unknown object `{}`", n)))
    };
    let look_mor = |n: &str| {
        mor_index
            .get(n)
            .copied()
            .ok_or_else(|| Error::MalformedInput(format!("unknown morphism `{}`", n)))
    };
    let morphisms = doc
        .morphisms
        .iter()
        .map(|m| {
            Ok(Morphism {
                name: m.name.clone(),
                src: look_obj(&m.src)?,
                dst: look_obj(&m.dst)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut identities = vec![usize::MAX; doc.objects.len()];
    for (o, i) in &doc.identities {
        identities[look_obj(o)?] = look_mor(i)?;
    }
    if identities.contains(&usize::MAX) {
        return Err(Error::MalformedInput("missing identity".into()));
    }
    let mut composition = HashMap::new();
    for [g, f, h] in &doc.composition {
        composition.insert((look_mor(g)?, look_mor(f)?), look_mor(h)?);
    }
    // identity composites may be omitted from the table
    let cat_partial = FiniteCategory {
        objects: doc.objects.clone(),
        morphisms,
        composition,
        identities,
    };
    let mut composition = cat_partial.composition.clone();
    for (f, mf) in cat_partial.morphisms.iter().enumerate() {
        composition
            .entry((cat_partial.identities[mf.dst], f))
            .or_insert(f);
        composition
            .entry((f, cat_partial.identities[mf.src]))
            .or_insert(f);
    }
    let cat = FiniteCategory {
        composition,
        ..cat_partial
    };
    cat.validate()?;
    Ok(cat)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
}
