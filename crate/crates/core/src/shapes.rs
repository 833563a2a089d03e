//! Named stratified shapes and the generator families.
//!
//! The marked shapes follow the complicial-sets conventions: in `Δ^k[m]` a
//! non-degenerate simplex is marked exactly when its vertex set contains
//! `{k-1, k, k+1} ∩ [m]`; the primed variant additionally marks the
//! `(k-1)`-st and `(k+1)`-st faces of the top simplex, the double-primed
//! variant also the `k`-th; `Λ^k[m]` is the k-horn with the restricted
//! marking; `Δ[3]_eq` marks all 2- and 3-simplices together with the edges
//! `[02]` and `[13]`.
//!
//! The elementary anodyne extensions come in four families: complicial horn
//! extensions `Λ^k[m] -> Δ^k[m]` (regular), complicial thinness extensions
//! `Δ^k[m]' -> Δ^k[m]''` (entire), triviality extensions `Δ[l] -> Δ[l]_t`
//! for `l > n` (entire), and saturation extensions
//! `Δ[l] ⋆ Δ[3]_eq -> Δ[l] ⋆ Δ[3]^♯` for `l >= -1` (entire).

use std::fmt;

use serde::Serialize;

use crate::scomplex::{
    boundary, cell_vertices, horn, standard, Cell, FormalSimplex, SimplicialOperator,
};
use crate::strat::{
    delta, delta_t, initial, join_strat, ExtraLabel, JoinStrat, LabelKey, Prestrat, StratMap,
};
use crate::{Error, Result};

/// Whether a vertex subset is marked in Δ^k[m].
fn csimplex_marked(subset: &[u8], k: usize, m: usize) -> bool {
    if subset.len() < 2 {
        return false;
    }
    let lo = k.saturating_sub(1);
    let hi = (k + 1).min(m);
    (lo..=hi).all(|v| subset.contains(&(v as u8)))
}

/// Marking variants of the k-complicial m-simplex.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CVariant {
    Plain,
    Prime,
    DoublePrime,
}

/// The stratified simplex Δ^k[m], or its primed variants.
pub fn complicial_simplex(k: usize, m: usize, variant: CVariant) -> Result<Prestrat> {
    if k > m {
        return Err(Error::IndexRange(format!("Δ^{}[{}]", k, m)));
    }
    let space = standard(m);
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); m];
    for p in 1..=m {
        for c in space.cells(p) {
            if csimplex_marked(&cell_vertices(&space, c), k, m) {
                extra[p - 1].push(ExtraLabel {
                    anchor: FormalSimplex::cell(c),
                });
            }
        }
    }
    // the primed variants additionally mark faces of the top simplex, when
    // those faces have positive dimension
    if variant != CVariant::Plain && m >= 2 {
        let mut face_ids = Vec::new();
        if k >= 1 {
            face_ids.push(k - 1);
        }
        if k + 1 <= m {
            face_ids.push(k + 1);
        }
        if variant == CVariant::DoublePrime {
            face_ids.push(k);
        }
        for i in face_ids {
            let mut vs: Vec<u8> = (0..=m as u8).collect();
            vs.remove(i);
            let c = crate::scomplex::subset_cell(&space, &vs).unwrap();
            let anchor = FormalSimplex::cell(c);
            if !extra[m - 2].iter().any(|l| l.anchor == anchor) {
                extra[m - 2].push(ExtraLabel { anchor });
            }
        }
    }
    Ok(Prestrat::from_extras(space, extra))
}

/// The complicial horn Λ^k[m] together with its inclusion into Δ^k[m].
pub fn complicial_horn(k: usize, m: usize) -> Result<(Prestrat, Prestrat, StratMap)> {
    if m < 1 || k > m {
        return Err(Error::IndexRange(format!("Λ^{}[{}]", k, m)));
    }
    let target = complicial_simplex(k, m, CVariant::Plain)?;
    let space = horn(k, m)?;
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); space.dim()];
    for p in 1..=space.dim() {
        for c in space.cells(p) {
            if csimplex_marked(&cell_vertices(&space, c), k, m) {
                extra[p - 1].push(ExtraLabel {
                    anchor: FormalSimplex::cell(c),
                });
            }
        }
    }
    let source = Prestrat::from_extras(space, extra);
    let map = inclusion_by_name(&source, &target)?;
    Ok((source, target, map))
}

/// Inclusion of a sub-object whose cells carry the same names.
pub fn inclusion_by_name(sub: &Prestrat, sup: &Prestrat) -> Result<StratMap> {
    let mut images = Vec::with_capacity(sub.dim() + 1);
    for p in 0..=sub.dim() {
        let mut level = Vec::new();
        for c in sub.space.cells(p) {
            let name = sub.space.cell_name(c);
            let target = sup.space.find_cell(p, name).ok_or_else(|| {
                Error::MalformedInput(format!("cell {} is missing from the target", name))
            })?;
            level.push(FormalSimplex::cell(target));
        }
        images.push(level);
    }
    let simp = crate::scomplex::SMap { images };
    let labels = label_assignment_by_anchor(sub, sup, &simp)?;
    let map = StratMap { simp, labels };
    map.validate(sub, sup)?;
    Ok(map)
}

/// For an already-known simplicial part, sends every stored label to the
/// first label of the target anchored at its image.
pub fn label_assignment_by_anchor(
    src: &Prestrat,
    dst: &Prestrat,
    simp: &crate::scomplex::SMap,
) -> Result<Vec<Vec<LabelKey>>> {
    let mut labels = Vec::with_capacity(src.dim());
    for p in 1..=src.dim() {
        let mut level = Vec::new();
        for l in src.extras(p) {
            let img = simp.image(&l.anchor);
            let keys = dst.labels_at(&img);
            let key = keys.into_iter().next().ok_or_else(|| {
                Error::MalformedInput(format!(
                    "marked simplex lands on the unmarked {:?}",
                    img
                ))
            })?;
            level.push(key);
        }
        labels.push(level);
    }
    Ok(labels)
}

/// The entire inclusion between two markings of the same complex.
pub fn entire_inclusion(src: &Prestrat, dst: &Prestrat) -> Result<StratMap> {
    if src.space != dst.space {
        return Err(Error::MalformedInput(
            "entire inclusion requires the same underlying complex".into(),
        ));
    }
    let simp = crate::scomplex::SMap::identity(&src.space);
    let labels = label_assignment_by_anchor(src, dst, &simp)?;
    let map = StratMap { simp, labels };
    map.validate(src, dst)?;
    Ok(map)
}

/// Δ[3]_eq: all 2- and 3-simplices marked, plus the edges [02] and [13].
pub fn delta3_eq() -> Prestrat {
    let space = standard(3);
    let mut extra: Vec<Vec<ExtraLabel>> = vec![Vec::new(); 3];
    for p in 2..=3 {
        for c in space.cells(p) {
            extra[p - 1].push(ExtraLabel {
                anchor: FormalSimplex::cell(c),
            });
        }
    }
    for vs in [[0u8, 2], [1, 3]] {
        let c = crate::scomplex::subset_cell(&space, &vs).unwrap();
        extra[0].push(ExtraLabel {
            anchor: FormalSimplex::cell(c),
        });
    }
    Prestrat::from_extras(space, extra)
}

/// Δ[3]^♯.
pub fn delta3_sharp() -> Prestrat {
    Prestrat::sharp(standard(3))
}

/// The standard simplex of dimension `l >= -1`, with Δ[-1] the empty object.
pub fn delta_maybe_empty(l: isize) -> Prestrat {
    if l < 0 {
        initial()
    } else {
        delta(l as usize)
    }
}

/// A saturation extension: the entire inclusion
/// `Δ[l] ⋆ Δ[3]_eq -> Δ[l] ⋆ Δ[3]^♯`.
pub struct SaturationPair {
    pub source: Prestrat,
    pub target: Prestrat,
    pub map: StratMap,
    pub source_join: JoinStrat,
    pub target_join: JoinStrat,
}

pub fn saturation_pair(l: isize) -> Result<SaturationPair> {
    if l < -1 {
        return Err(Error::IndexRange(format!("saturation index {}", l)));
    }
    let left = delta_maybe_empty(l);
    let source_join = join_strat(&left, &delta3_eq())?;
    let target_join = join_strat(&left, &delta3_sharp())?;
    let source = source_join.object.clone();
    let target = target_join.object.clone();
    let map = entire_inclusion(&source, &target)?;
    Ok(SaturationPair {
        source,
        target,
        map,
        source_join,
        target_join,
    })
}

/// The alternative two-sided saturation extension
/// `Δ[m] ⋆ Δ[3]_eq ⋆ Δ[l] -> Δ[m] ⋆ Δ[3]^♯ ⋆ Δ[l]`, not part of the default
/// generator list.
pub fn saturation_pair_two_sided(m: isize, l: isize) -> Result<(Prestrat, Prestrat, StratMap)> {
    let lm = delta_maybe_empty(m);
    let lr = delta_maybe_empty(l);
    let src = join_strat(&join_strat(&lm, &delta3_eq())?.object, &lr)?.object;
    let dst = join_strat(&join_strat(&lm, &delta3_sharp())?.object, &lr)?.object;
    let map = entire_inclusion(&src, &dst)?;
    Ok((src, dst, map))
}

/// The generator families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    Horn { k: usize, m: usize },
    Thinness { k: usize, m: usize },
    Triviality { l: usize },
    Saturation { l: isize },
    CofBoundary { m: usize },
    CofMarking { m: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Horn { k, m } => write!(f, "horn:{},{}", k, m),
            Family::Thinness { k, m } => write!(f, "thinness:{},{}", k, m),
            Family::Triviality { l } => write!(f, "triviality:{}", l),
            Family::Saturation { l } => write!(f, "saturation:{}", l),
            Family::CofBoundary { m } => write!(f, "cof-boundary:{}", m),
            Family::CofMarking { m } => write!(f, "cof-marking:{}", m),
        }
    }
}

impl Family {
    pub fn parse(text: &str) -> Result<Family> {
        let (name, args) = text
            .split_once(':')
            .ok_or_else(|| Error::MalformedInput(format!("bad generator `{}`", text)))?;
        let nums: Vec<isize> = args
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<isize>()
                    .map_err(|_| Error::MalformedInput(format!("bad generator `{}`", text)))
            })
            .collect::<Result<_>>()?;
        let two = |f: fn(usize, usize) -> Family| {
            if nums.len() == 2 && nums[0] >= 0 && nums[1] >= 0 {
                Ok(f(nums[0] as usize, nums[1] as usize))
            } else {
                Err(Error::MalformedInput(format!("bad generator `{}`", text)))
            }
        };
        match name {
            "horn" => two(|k, m| Family::Horn { k, m }),
            "thinness" => two(|k, m| Family::Thinness { k, m }),
            "triviality" if nums.len() == 1 && nums[0] >= 0 => Ok(Family::Triviality {
                l: nums[0] as usize,
            }),
            "saturation" if nums.len() == 1 && nums[0] >= -1 => {
                Ok(Family::Saturation { l: nums[0] })
            }
            "cof-boundary" if nums.len() == 1 && nums[0] >= 0 => Ok(Family::CofBoundary {
                m: nums[0] as usize,
            }),
            "cof-marking" if nums.len() == 1 && nums[0] >= 1 => Ok(Family::CofMarking {
                m: nums[0] as usize,
            }),
            _ => Err(Error::MalformedInput(format!("bad generator `{}`", text))),
        }
    }
}

/// A generator arrow with its endpoints materialized.
pub struct GeneratorDescriptor {
    pub family: Family,
    pub source: Prestrat,
    pub target: Prestrat,
    pub map: StratMap,
}

/// Materializes one generator.
pub fn generator(family: Family) -> Result<GeneratorDescriptor> {
    match family {
        Family::Horn { k, m } => {
            let (source, target, map) = complicial_horn(k, m)?;
            Ok(GeneratorDescriptor {
                family,
                source,
                target,
                map,
            })
        }
        Family::Thinness { k, m } => {
            if m < 2 {
                return Err(Error::IndexRange(format!(
                    "thinness extension needs m >= 2, got {}",
                    m
                )));
            }
            let source = complicial_simplex(k, m, CVariant::Prime)?;
            let target = complicial_simplex(k, m, CVariant::DoublePrime)?;
            let map = entire_inclusion(&source, &target)?;
            Ok(GeneratorDescriptor {
                family,
                source,
                target,
                map,
            })
        }
        Family::Triviality { l } => {
            if l < 1 {
                return Err(Error::IndexRange("triviality extension needs l >= 1".into()));
            }
            let source = delta(l);
            let target = delta_t(l)?;
            let map = entire_inclusion(&source, &target)?;
            Ok(GeneratorDescriptor {
                family,
                source,
                target,
                map,
            })
        }
        Family::Saturation { l } => {
            let p = saturation_pair(l)?;
            Ok(GeneratorDescriptor {
                family,
                source: p.source,
                target: p.target,
                map: p.map,
            })
        }
        Family::CofBoundary { m } => {
            let source = Prestrat::flat(boundary(m));
            let target = delta(m);
            let map = if m == 0 {
                StratMap {
                    simp: crate::scomplex::SMap {
                        images: vec![Vec::new()],
                    },
                    labels: Vec::new(),
                }
            } else {
                inclusion_by_name(&source, &target)?
            };
            Ok(GeneratorDescriptor {
                family,
                source,
                target,
                map,
            })
        }
        Family::CofMarking { m } => {
            let source = delta(m);
            let target = delta_t(m)?;
            let map = entire_inclusion(&source, &target)?;
            Ok(GeneratorDescriptor {
                family,
                source,
                target,
                map,
            })
        }
    }
}

/// All elementary anodyne extensions with shapes of dimension at most
/// `dim_bound`, for the n-trivial theory.
pub fn anodyne_generators(n: usize, dim_bound: usize) -> Result<Vec<GeneratorDescriptor>> {
    let mut out = Vec::new();
    for m in 1..=dim_bound {
        for k in 0..=m {
            out.push(generator(Family::Horn { k, m })?);
        }
    }
    for m in 2..=dim_bound {
        for k in 0..=m {
            out.push(generator(Family::Thinness { k, m })?);
        }
    }
    for l in (n + 1).max(1)..=dim_bound {
        out.push(generator(Family::Triviality { l })?);
    }
    let mut l: isize = -1;
    while l + 4 <= dim_bound as isize {
        out.push(generator(Family::Saturation { l })?);
        l += 1;
    }
    Ok(out)
}

/// The generating cofibrations up to `dim_bound`.
pub fn generating_cofibrations(dim_bound: usize) -> Result<Vec<GeneratorDescriptor>> {
    let mut out = Vec::new();
    for m in 0..=dim_bound {
        out.push(generator(Family::CofBoundary { m })?);
    }
    for m in 1..=dim_bound {
        out.push(generator(Family::CofMarking { m })?);
    }
    Ok(out)
}

/// Vertex list of a cell of a join of two subset-built complexes, in the
/// vertex numbering of the joined simplex.
pub fn join_cell_vertices(
    j: &JoinStrat,
    x: &Prestrat,
    y: &Prestrat,
    left_vertices: usize,
    c: Cell,
) -> Vec<u8> {
    let (a, b) = j.parts[c.dim as usize][c.idx as usize];
    let mut vs = Vec::new();
    if let Some(a) = a {
        vs.extend(cell_vertices(&x.space, a));
    }
    if let Some(b) = b {
        vs.extend(
            cell_vertices(&y.space, b)
                .into_iter()
                .map(|v| v + left_vertices as u8),
        );
    }
    vs
}

/// The map out of a simplex-shaped stratified set classified by a formal
/// simplex of the target: every cell goes to the corresponding operator
/// applied to `top`, and labels follow anchors. `vertices` realizes each cell
/// inside the top simplex.
pub fn strat_map_from_top(
    src: &Prestrat,
    vertices: &dyn Fn(Cell) -> Vec<u8>,
    dst: &Prestrat,
    top: &FormalSimplex,
) -> Result<StratMap> {
    let n = top.dim();
    let mut images = Vec::with_capacity(src.dim() + 1);
    for p in 0..=src.dim() {
        let mut level = Vec::new();
        for c in src.space.cells(p) {
            let op = SimplicialOperator::inclusion(&vertices(c), n);
            level.push(dst.space.apply_op(&op, top)?);
        }
        images.push(level);
    }
    let simp = crate::scomplex::SMap { images };
    let labels = label_assignment_by_anchor(src, dst, &simp)?;
    let map = StratMap { simp, labels };
    map.validate(src, dst)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strat::classify_mono;
    use crate::strat::MonoClass;

    #[test]
    fn csimplex_markings() {
        let d12 = complicial_simplex(1, 2, CVariant::Plain).unwrap();
        assert_eq!(d12.marked_profile(), vec![0, 1]);
        let d12p = complicial_simplex(1, 2, CVariant::Prime).unwrap();
        assert_eq!(d12p.marked_profile(), vec![2, 1]);
        let d12pp = complicial_simplex(1, 2, CVariant::DoublePrime).unwrap();
        assert_eq!(d12pp.marked_profile(), vec![3, 1]);
        // Δ^0[1] is the marked edge
        let d01 = complicial_simplex(0, 1, CVariant::Plain).unwrap();
        assert_eq!(d01, delta_t(1).unwrap());
    }

    #[test]
    fn horn_markings() {
        let (h, t, inc) = complicial_horn(1, 2).unwrap();
        assert_eq!(h.space.profile(), vec![3, 2]);
        assert_eq!(h.marked_nondegenerate_count(), 0);
        assert_eq!(classify_mono(&inc, &h, &t), MonoClass::Regular);

        // Λ^0[1] is the vertex {0} inside Δ[1]_t
        let (h01, t01, _) = complicial_horn(0, 1).unwrap();
        assert_eq!(h01.space.profile(), vec![1]);
        assert_eq!(h01.space.cell_name(Cell::new(0, 0)), "0");
        assert_eq!(t01, delta_t(1).unwrap());
    }

    #[test]
    fn eq_and_saturation() {
        let eq = delta3_eq();
        assert_eq!(eq.marked_nondegenerate_count(), 7);
        assert_eq!(eq.marked_profile(), vec![2, 4, 1]);

        let p = saturation_pair(-1).unwrap();
        assert_eq!(p.source, delta3_eq());
        assert_eq!(p.target, delta3_sharp());
        assert!(p.map.is_entire(&p.source, &p.target));

        let p0 = saturation_pair(0).unwrap();
        assert_eq!(p0.source.marked_nondegenerate_count(), 14);
    }

    #[test]
    fn generator_lists() {
        // horn count at bound 2: two for m=1, three for m=2
        let gens = anodyne_generators(0, 2).unwrap();
        let horns = gens
            .iter()
            .filter(|g| matches!(g.family, Family::Horn { .. }))
            .count();
        assert_eq!(horns, 5);
        let trivs: Vec<usize> = gens
            .iter()
            .filter_map(|g| match g.family {
                Family::Triviality { l } => Some(l),
                _ => None,
            })
            .collect();
        assert_eq!(trivs, vec![1, 2]);
        let gens2 = anodyne_generators(2, 2).unwrap();
        assert!(gens2
            .iter()
            .all(|g| !matches!(g.family, Family::Triviality { .. })));
        // saturation appears only from bound 3 on
        assert!(!gens
            .iter()
            .any(|g| matches!(g.family, Family::Saturation { .. })));
        let gens3 = anodyne_generators(0, 3).unwrap();
        assert!(gens3
            .iter()
            .any(|g| g.family == Family::Saturation { l: -1 }));
    }

    #[test]
    fn generator_classification() {
        for g in anodyne_generators(1, 3).unwrap() {
            let class = classify_mono(&g.map, &g.source, &g.target);
            match g.family {
                Family::Horn { .. } => assert_eq!(class, MonoClass::Regular, "{}", g.family),
                _ => assert_eq!(class, MonoClass::Entire, "{}", g.family),
            }
        }
        for g in generating_cofibrations(3).unwrap() {
            let class = classify_mono(&g.map, &g.source, &g.target);
            match g.family {
                Family::CofBoundary { .. } => {
                    assert_eq!(class, MonoClass::Regular, "{}", g.family)
                }
                _ => assert_eq!(class, MonoClass::Entire, "{}", g.family),
            }
        }
    }

    #[test]
    fn family_parse() {
        assert_eq!(
            Family::parse("horn:1,2").unwrap(),
            Family::Horn { k: 1, m: 2 }
        );
        assert_eq!(
            Family::parse("saturation:-1").unwrap(),
            Family::Saturation { l: -1 }
        );
        assert!(Family::parse("nope:1").is_err());
    }

    #[test]
    fn lambda_n_monotone() {
        // generators shrink as n grows: gens(n') ⊇ gens(n) for n' <= n
        for dim in [2usize, 4] {
            let g0: Vec<Family> = anodyne_generators(0, dim).unwrap().iter().map(|g| g.family).collect();
            let g1: Vec<Family> = anodyne_generators(1, dim).unwrap().iter().map(|g| g.family).collect();
            let g2: Vec<Family> = anodyne_generators(2, dim).unwrap().iter().map(|g| g.family).collect();
            for f in &g2 {
                assert!(g1.contains(f));
            }
            for f in &g1 {
                assert!(g0.contains(f));
            }
            assert!(g0.len() > g1.len());
        }
    }

    #[test]
    fn marked_sets_of_variants_nest() {
        for m in 1..=6usize {
            for k in 0..=m {
                let plain = complicial_simplex(k, m, CVariant::Plain).unwrap();
                let prime = complicial_simplex(k, m, CVariant::Prime).unwrap();
                let dpp = complicial_simplex(k, m, CVariant::DoublePrime).unwrap();
                for mm in 1..=m {
                    let pa: Vec<_> = plain.extras(mm).to_vec();
                    let pr: Vec<_> = prime.extras(mm).to_vec();
                    let dp: Vec<_> = dpp.extras(mm).to_vec();
                    for l in &pa {
                        assert!(pr.contains(l));
                    }
                    for l in &pr {
                        assert!(dp.contains(l));
                    }
                }
            }
        }
    }

    #[test]
    fn two_sided_saturation_is_entire() {
        let (src, dst, map) = saturation_pair_two_sided(-1, 0).unwrap();
        assert!(map.is_entire(&src, &dst));
        let (src2, dst2, _) = saturation_pair_two_sided(0, -1).unwrap();
        assert_eq!(src2.space, crate::scomplex::standard(4));
        assert_eq!(dst2.space, src2.space);
        let _ = (src, dst);
    }
}
