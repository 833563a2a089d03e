//! Finite categories, their nerves, and the Roberts–Street stratification.
//!
//! A k-simplex of the nerve is a string of k composable arrows; the simplex
//! is non-degenerate exactly when no arrow is an identity. The Roberts–Street
//! stratification of the nerve of a 1-category marks the simplices coming
//! from identity cells: only degenerate 1-simplices, and everything in
//! dimension two and higher.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::scomplex::{Cell, FiniteSimplicialSet, FormalSimplex};
use crate::strat::{reflector, ExtraLabel, Prestrat, StratMap};
use crate::{Error, Result};

/// A finite category: objects, arrows, identities and a composition table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// `composition[(g, f)] = g ∘ f`, total on composable pairs.
    pub composition: HashMap<(usize, usize), usize>,
    /// identity arrow of each object
    pub identities: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

impl FiniteCategory {
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }

    /// Checks unit and associativity laws over the whole table.
    pub fn validate(&self) -> Result<()> {
        if self.identities.len() != self.objects.len() {
            return Err(Error::MalformedInput(
                "one identity per object is required".into(),
            ));
        }
        for (o, &i) in self.identities.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.src != o || m.dst != o {
                return Err(Error::MalformedInput(format!(
                    "identity of {} has wrong endpoints",
                    self.objects[o]
                )));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                let composable = mf.dst == mg.src;
                match self.compose(g, f) {
                    None if composable => {
                        return Err(Error::MalformedInput(format!(
                            "missing composite {} ∘ {}",
                            mg.name, mf.name
                        )));
                    }
                    Some(h) if !composable => {
                        return Err(Error::MalformedInput(format!(
                            "non-composable pair {} ∘ {} has a composite {}",
                            mg.name, mf.name, self.morphisms[h].name
                        )));
                    }
                    Some(h) => {
                        let mh = &self.morphisms[h];
                        if mh.src != mf.src || mh.dst != mg.dst {
                            return Err(Error::MalformedInput(format!(
                                "composite {} ∘ {} has wrong endpoints",
                                mg.name, mf.name
                            )));
                        }
                    }
                    None => {}
                }
            }
            // unit laws
            let l = self.compose(self.identities[mf.dst], f);
            let r = self.compose(f, self.identities[mf.src]);
            if l != Some(f) || r != Some(f) {
                return Err(Error::MalformedInput(format!(
                    "unit law fails at {}",
                    mf.name
                )));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                if mf.dst != mg.src {
                    continue;
                }
                for (h, mh) in self.morphisms.iter().enumerate() {
                    if mg.dst != mh.src {
                        continue;
                    }
                    let lhs = self.compose(h, self.compose(g, f).unwrap());
                    let rhs = self.compose(self.compose(h, g).unwrap(), f);
                    if lhs != rhs || lhs.is_none() {
                        return Err(Error::MalformedInput(format!(
                            "associativity fails at {} ∘ {} ∘ {}",
                            mh.name, mg.name, mf.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether an arrow has a two-sided inverse.
    pub fn is_iso(&self, f: usize) -> bool {
        let mf = &self.morphisms[f];
        (0..self.morphisms.len()).any(|g| {
            let mg = &self.morphisms[g];
            mg.src == mf.dst
                && mg.dst == mf.src
                && self.compose(g, f) == Some(self.identities[mf.src])
                && self.compose(f, g) == Some(self.identities[mf.dst])
        })
    }
}

/// The free isomorphism category: two objects, an arrow each way, both
/// composites identities.
pub fn free_iso() -> FiniteCategory {
    let objects = vec!["a".to_string(), "b".to_string()];
    let morphisms = vec![
        Morphism { name: "ida".into(), src: 0, dst: 0 },
        Morphism { name: "idb".into(), src: 1, dst: 1 },
        Morphism { name: "f".into(), src: 0, dst: 1 },
        Morphism { name: "finv".into(), src: 1, dst: 0 },
    ];
    let mut composition = HashMap::new();
    // identities
    for f in 0..4 {
        let (s, d) = (morphisms[f].src, morphisms[f].dst);
        composition.insert((f, s), f);
        composition.insert((d, f), f);
    }
    composition.insert((3, 2), 0); // finv ∘ f = ida
    composition.insert((2, 3), 1); // f ∘ finv = idb
    FiniteCategory {
        objects,
        morphisms,
        composition,
        identities: vec![0, 1],
    }
}

/// The terminal category.
pub fn terminal() -> FiniteCategory {
    FiniteCategory {
        objects: vec!["x".into()],
        morphisms: vec![Morphism { name: "idx".into(), src: 0, dst: 0 }],
        composition: HashMap::from([((0, 0), 0)]),
        identities: vec![0],
    }
}

/// The walking arrow `0 -> 1`.
pub fn walking_arrow() -> FiniteCategory {
    let morphisms = vec![
        Morphism { name: "id0".into(), src: 0, dst: 0 },
        Morphism { name: "id1".into(), src: 1, dst: 1 },
        Morphism { name: "u".into(), src: 0, dst: 1 },
    ];
    let mut composition = HashMap::new();
    for f in 0..3 {
        let (s, d) = (morphisms[f].src, morphisms[f].dst);
        composition.insert((f, s), f);
        composition.insert((d, f), f);
    }
    FiniteCategory {
        objects: vec!["0".into(), "1".into()],
        morphisms,
        composition,
        identities: vec![0, 1],
    }
}

/// A string of composable arrows with no identity component, plus the cells
/// realizing it inside the nerve.
type ArrowString = Vec<usize>;

/// The nerve of a finite category, truncated at `dim_bound`. Non-degenerate
/// k-simplices are the identity-free composable strings of length k.
pub struct Nerve {
    pub complex: FiniteSimplicialSet,
    /// `strings[m][idx]`: the string of the cell; for m = 0 the singleton
    /// object index.
    pub strings: Vec<Vec<ArrowString>>,
    pub index: HashMap<ArrowString, Cell>,
    /// object index of each vertex
    pub vertex_objects: Vec<usize>,
}

impl Nerve {
    /// The formal simplex of a possibly-identity-containing string: strip
    /// identities, recording the degeneracy positions.
    pub fn normalize_string(&self, cat: &FiniteCategory, string: &[usize], start_obj: usize) -> FormalSimplex {
        let mut word: Vec<u8> = Vec::new();
        let mut reduced: ArrowString = Vec::new();
        for (p, &f) in string.iter().enumerate() {
            if cat.is_identity(f) {
                word.push(p as u8);
            } else {
                reduced.push(f);
            }
        }
        // positions of identities, adjusted to the reduced string: the word
        // entry for an identity at position p (0-based over arrows) is
        // p minus the identities before it
        let mut adjusted: Vec<u8> = Vec::new();
        let mut seen = 0u8;
        for &p in &word {
            adjusted.push(p - seen);
            seen += 1;
        }
        adjusted.reverse();
        let base = if reduced.is_empty() {
            Cell::new(0, self.vertex_objects.iter().position(|&o| o == start_obj).unwrap())
        } else {
            self.index[&reduced]
        };
        // re-sort into normal form by inserting one degeneracy at a time
        let mut f = FormalSimplex::cell(base);
        for &j in adjusted.iter().rev() {
            f = crate::scomplex::degenerate(j as usize, &f);
        }
        f
    }
}

/// Builds the truncated nerve.
pub fn nerve(cat: &FiniteCategory, dim_bound: usize) -> Nerve {
    let mut names: Vec<Vec<String>> = vec![Vec::new(); dim_bound + 1];
    let mut strings: Vec<Vec<ArrowString>> = vec![Vec::new(); dim_bound + 1];
    let mut index: HashMap<ArrowString, Cell> = HashMap::new();
    let mut vertex_objects = Vec::new();
    for (o, name) in cat.objects.iter().enumerate() {
        let idx = names[0].len();
        names[0].push(name.clone());
        strings[0].push(Vec::new());
        vertex_objects.push(o);
        let _ = idx;
    }
    // identity-free strings, breadth-first by length
    let mut frontier: Vec<ArrowString> = (0..cat.morphisms.len())
        .filter(|&f| !cat.is_identity(f))
        .map(|f| vec![f])
        .collect();
    for m in 1..=dim_bound {
        let mut next = Vec::new();
        for s in &frontier {
            let idx = names[m].len();
            let name = s
                .iter()
                .map(|&f| cat.morphisms[f].name.clone())
                .collect::<Vec<_>>()
                .join(";");
            names[m].push(name);
            strings[m].push(s.clone());
            index.insert(s.clone(), Cell::new(m, idx));
            if m < dim_bound {
                let last_dst = cat.morphisms[*s.last().unwrap()].dst;
                for g in 0..cat.morphisms.len() {
                    if !cat.is_identity(g) && cat.morphisms[g].src == last_dst {
                        let mut s2 = s.clone();
                        s2.push(g);
                        next.push(s2);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut n = Nerve {
        complex: FiniteSimplicialSet::new(dim_bound, names, Vec::new()),
        strings,
        index,
        vertex_objects,
    };
    // face tables: d_0 drops the first arrow, d_m the last, inner faces compose
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); dim_bound + 1];
    for _ in 0..cat.objects.len() {
        faces[0].push(Vec::new());
    }
    for m in 1..=dim_bound {
        for s in &n.strings[m].clone() {
            let start = cat.morphisms[s[0]].src;
            let fs = (0..=m)
                .map(|i| {
                    let (reduced, start_obj) = if i == 0 {
                        (s[1..].to_vec(), cat.morphisms[s[0]].dst)
                    } else if i == m {
                        (s[..m - 1].to_vec(), start)
                    } else {
                        let mut r = s[..i - 1].to_vec();
                        r.push(cat.compose(s[i], s[i - 1]).expect("composable string"));
                        r.extend_from_slice(&s[i + 1..]);
                        (r, start)
                    };
                    n.normalize_string(cat, &reduced, start_obj)
                })
                .collect();
            faces[m].push(fs);
        }
    }
    n.complex = FiniteSimplicialSet::new(
        dim_bound,
        (0..=dim_bound)
            .map(|m| {
                (0..n.complex.cell_count(m))
                    .map(|i| n.complex.cell_name(Cell::new(m, i)).to_string())
                    .collect()
            })
            .collect(),
        faces,
    );
    n
}

/// The Roberts–Street stratification of the nerve of a 1-category: only
/// degenerate 1-simplices are marked, and everything in dimension >= 2.
pub fn nerve_rs(cat: &FiniteCategory, dim_bound: usize) -> (Prestrat, Nerve) {
    let n = nerve(cat, dim_bound);
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); dim_bound];
    for m in 2..=dim_bound {
        for c in n.complex.cells(m) {
            extra[m - 1].push(ExtraLabel {
                anchor: FormalSimplex::cell(c),
            });
        }
    }
    (Prestrat::from_extras(n.complex.clone(), extra), n)
}

/// Marks the 1-simplices that are isomorphisms of the category, on top of the
/// Roberts–Street stratification; for a groupoid this is the maximal
/// stratification. Returns the entire comparison map from the nerve.
pub fn saturate_nerve(cat: &FiniteCategory, dim_bound: usize) -> Result<(Prestrat, StratMap)> {
    let (rs, n) = nerve_rs(cat, dim_bound);
    let mut extra = rs.extra.clone();
    if dim_bound >= 1 {
        for c in n.complex.cells(1) {
            let f = n.strings[1][c.idx as usize][0];
            if cat.is_iso(f) {
                extra[0].push(ExtraLabel {
                    anchor: FormalSimplex::cell(c),
                });
            }
        }
    }
    let saturated = Prestrat::from_extras(n.complex.clone(), extra);
    let map = crate::shapes::entire_inclusion(&rs, &saturated)?;
    Ok((saturated, map))
}

/// Functorial image of a functor on nerves (used to test functoriality).
pub fn nerve_map(
    cat_src: &FiniteCategory,
    cat_dst: &FiniteCategory,
    object_map: &[usize],
    morphism_map: &[usize],
    dim_bound: usize,
) -> Result<StratMap> {
    let ns = nerve(cat_src, dim_bound);
    let nd = nerve(cat_dst, dim_bound);
    let (rs_s, _) = nerve_rs(cat_src, dim_bound);
    let (rs_d, _) = nerve_rs(cat_dst, dim_bound);
    let mut images: Vec<Vec<FormalSimplex>> = Vec::with_capacity(dim_bound + 1);
    for m in 0..=dim_bound {
        let mut level = Vec::new();
        for c in ns.complex.cells(m) {
            if m == 0 {
                let o = object_map[ns.vertex_objects[c.idx as usize]];
                level.push(FormalSimplex::cell(Cell::new(0, o)));
            } else {
                let s = &ns.strings[m][c.idx as usize];
                let mapped: Vec<usize> = s.iter().map(|&f| morphism_map[f]).collect();
                let start = object_map[cat_src.morphisms[s[0]].src];
                level.push(nd.normalize_string(cat_dst, &mapped, start));
            }
        }
        images.push(level);
    }
    let simp = crate::scomplex::SMap { images };
    let labels = crate::shapes::label_assignment_by_anchor(&rs_s, &rs_d, &simp)?;
    let map = StratMap { simp, labels };
    map.validate(&rs_s, &rs_d)?;
    Ok(map)
}

/// Reflected sharp nerve, for comparison with `saturate_nerve` on groupoids.
pub fn nerve_sharp(cat: &FiniteCategory, dim_bound: usize) -> Prestrat {
    let n = nerve(cat, dim_bound);
    let r = reflector(&Prestrat::sharp(n.complex));
    r.object
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_iso_table() {
        let c = free_iso();
        c.validate().unwrap();
        assert_eq!(c.morphisms.len(), 4);
        assert_eq!(c.compose(3, 2), Some(0));
        assert!(c.is_iso(2) && c.is_iso(3));
        terminal().validate().unwrap();
        walking_arrow().validate().unwrap();
    }

    #[test]
    fn nerve_profiles() {
        let n = nerve(&free_iso(), 3);
        assert_eq!(n.complex.profile(), vec![2, 2, 2, 2]);
        n.complex.validate().unwrap();

        let t = nerve(&terminal(), 2);
        assert_eq!(t.complex.profile(), vec![1]);

        let w = nerve(&walking_arrow(), 2);
        assert_eq!(w.complex.profile(), vec![2, 1]);
        assert_eq!(w.complex, crate::scomplex::standard(1).with_dim(2));
    }

    #[test]
    fn rs_markings() {
        let (rs, _) = nerve_rs(&free_iso(), 3);
        rs.validate().unwrap();
        assert!(rs.is_stratified());
        // no marked non-degenerate 1-simplices; everything above is marked
        assert_eq!(rs.marked_profile(), vec![0, 2, 2]);
        let (rst, _) = nerve_rs(&terminal(), 2);
        assert_eq!(rst.marked_nondegenerate_count(), 0);
    }

    #[test]
    fn saturation_of_free_iso() {
        let (sat, cmp) = saturate_nerve(&free_iso(), 3).unwrap();
        assert_eq!(sat, nerve_sharp(&free_iso(), 3));
        let (rs, _) = nerve_rs(&free_iso(), 3);
        assert!(cmp.is_entire(&rs, &sat));
    }

    #[test]
    fn nerve_functoriality() {
        // the unique functor from the walking arrow into the free isomorphism
        // sending u to f
        let wa = walking_arrow();
        let fi = free_iso();
        let map = nerve_map(&wa, &fi, &[0, 1], &[0, 1, 2], 2).unwrap();
        let (rs_w, _) = nerve_rs(&wa, 2);
        let (rs_f, _) = nerve_rs(&fi, 2);
        map.validate(&rs_w, &rs_f).unwrap();
    }
}
