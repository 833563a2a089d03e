//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p tstrat-core --test acceptance -- --nocapture` to
//! see the lines; failures abort the corresponding test.

use std::collections::HashSet;
use std::time::Instant;

use tstrat_core::lifting::{
    build_retract, elementary_homotopy, homotopic, is_n_complicial, solve_lift, unit_acyclic_fibration_check,
    verify_pp_lemma, HomotopyVerdict, LiftOutcome, LiftingProblem, PPLemma,
};
use tstrat_core::nerve::{free_iso, nerve_rs};
use tstrat_core::scomplex::{
    boundary, product, standard, Cell, FiniteSimplicialSet, FormalSimplex, SimplicialOperator,
};
use tstrat_core::shapes::{
    anodyne_generators, complicial_horn, complicial_simplex, delta3_eq, entire_inclusion,
    generating_cofibrations, generator, CVariant, Family,
};
use tstrat_core::strat::{
    classify_mono, delta, delta_t, enumerate_hom, internal_hom_level, product_strat, pushout,
    pushout_strat, reflector, relabel, ExtraLabel, LabelKey, MonoClass, Prestrat, SearchStatus,
    StratMap,
};
use tstrat_core::tdelta::{
    compose, hom_set, objects_up_to, reedy_factorize, sections_of, validate_presentation,
    Gen, TDeltaMorphism, TDeltaObject,
};

const BUDGET: u64 = 50_000_000;

fn line(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {}: {} — {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "criterion {} failed: {}", criterion, detail);
}

#[test]
fn criterion_01_tdelta_presentation_oracle() {
    let t = Instant::now();
    let rep = validate_presentation(3, 8).unwrap();
    let elapsed = t.elapsed();
    let within = elapsed.as_secs() <= 60;
    line(
        "1 (presentation oracle)",
        rep.pass && !rep.incomplete && within,
        &format!(
            "{} hom-sets in bijection with word classes over {} words, {:.1?}",
            rep.homs.len(),
            rep.words_enumerated,
            elapsed
        ),
    );
}

#[test]
fn criterion_02_reedy_uniqueness_and_regular_skeletal() {
    let t = Instant::now();
    let objects = objects_up_to(4);
    let mut morphisms_checked = 0usize;
    for &a in &objects {
        for &b in &objects {
            for f in hom_set(a, b) {
                // exhaustive factorization count through every candidate middle
                let mut found = Vec::new();
                for &c in &objects {
                    for minus in hom_set(a, c).iter().filter(|g| g.in_minus()) {
                        for plus in hom_set(c, b).iter().filter(|g| g.in_plus()) {
                            if compose(plus, minus).unwrap() == f {
                                found.push((minus.clone(), plus.clone()));
                            }
                        }
                    }
                }
                assert_eq!(found.len(), 1, "factorizations of {}", f);
                let rf = reedy_factorize(&f);
                assert_eq!((rf.minus, rf.plus), found[0].clone(), "canonical factorization of {}", f);
                morphisms_checked += 1;
            }
        }
    }
    // degree function: strictly monotone along non-identities of each side
    for &a in &objects {
        for &b in &objects {
            for f in hom_set(a, b) {
                if f.in_plus() && !f.is_identity() {
                    assert!(f.dst.degree() > f.src.degree());
                }
                if f.in_minus() && !f.is_identity() {
                    assert!(f.dst.degree() < f.src.degree());
                }
            }
        }
    }
    // φ is mono and epi: composition with φ is injective on hom-sets
    for m in 1..=4usize {
        let phi = Gen::Phi.concrete(TDeltaObject::plain(m));
        for &x in &objects {
            let pre: Vec<_> = hom_set(x, phi.src).iter().map(|g| compose(&phi, g).unwrap()).collect();
            let mut dedup = pre.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(pre.len(), dedup.len(), "φ not mono at [{}]", m);
            let post: Vec<_> = hom_set(phi.dst, x).iter().map(|g| compose(g, &phi).unwrap()).collect();
            let mut dedup = post.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(post.len(), dedup.len(), "φ not epi at [{}]", m);
        }
    }
    // regular skeletal: sections exist, section sets separate, plus maps mono
    for &a in &objects {
        for &b in &objects {
            let homs = hom_set(a, b);
            for f in &homs {
                if f.in_minus() && !f.is_identity() {
                    assert!(!sections_of(f).is_empty(), "no section of {}", f);
                }
                if f.in_plus() {
                    for &x in &objects {
                        let mut seen: Vec<TDeltaMorphism> = Vec::new();
                        for g in hom_set(x, a) {
                            let comp = compose(f, &g).unwrap();
                            assert!(!seen.contains(&comp) || hom_set(x, a).iter().filter(|g2| compose(f, g2).unwrap() == comp).count() == 1);
                            seen.push(comp);
                        }
                        let mut dedup = seen.clone();
                        dedup.sort();
                        dedup.dedup();
                        assert_eq!(seen.len(), dedup.len(), "{} is not a monomorphism", f);
                    }
                }
            }
            // parallel minus maps with equal section sets are equal
            let minus: Vec<_> = homs.iter().filter(|f| f.in_minus()).collect();
            for f in &minus {
                for g in &minus {
                    if f != g {
                        let sf = sections_of(f);
                        let sg = sections_of(g);
                        assert_ne!(sf, sg, "{} and {} share all sections", f, g);
                    }
                }
            }
        }
    }
    let elapsed = t.elapsed();
    line(
        "2 (Reedy uniqueness + regular skeletal)",
        elapsed.as_secs() <= 60,
        &format!("{} morphisms factor uniquely, {:.1?}", morphisms_checked, elapsed),
    );
}

#[test]
fn criterion_03_ez_calculus_and_products() {
    // all operators between ordinals of size <= 5, acting functorially
    let xs = [standard(2), crate_nerve_complex()];
    let mut checked = 0usize;
    for x in &xs {
        for p in 0..=4usize {
            for q in 0..=4usize {
                for r in 0..=4usize {
                    for op1 in all_operators(p, q) {
                        for op2 in all_operators(q, r) {
                            let comp = op2.compose(&op1).unwrap();
                            for f in x.formal_simplices(r) {
                                let direct = x.apply_op(&comp, &f).unwrap();
                                let staged =
                                    x.apply_op(&op1, &x.apply_op(&op2, &f).unwrap()).unwrap();
                                assert_eq!(direct, staged);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    // product profile
    let d1 = standard(1);
    let p = product(&d1, &d1, 2);
    assert_eq!(p.complex.profile(), vec![4, 5, 2]);

    // associativity and symmetry isomorphisms over a ten-object catalog
    let catalog: Vec<Prestrat> = vec![
        delta(0),
        delta(1),
        delta(2),
        delta(3),
        Prestrat::flat(boundary(2)),
        Prestrat::flat(boundary(3)),
        Prestrat::flat(tstrat_core::scomplex::horn(1, 2).unwrap()),
        Prestrat::flat(tstrat_core::scomplex::horn(0, 2).unwrap()),
        delta_t(1).unwrap(),
        Prestrat::flat(crate_nerve_complex()),
    ];
    assert_eq!(catalog.len(), 10);
    let mut sym_checked = 0;
    for x in &catalog {
        for y in &catalog {
            let xy = product_strat(x, y, 4);
            if xy.object.space.total_cells() > 50 {
                continue;
            }
            let yx = product_strat(y, x, 4);
            let swap = product_swap_iso(&xy, x, y, &yx);
            swap.validate(&xy.object, &yx.object).unwrap();
            assert!(swap.is_iso(&xy.object, &yx.object));
            sym_checked += 1;
        }
    }
    let mut assoc_checked = 0;
    for x in catalog.iter().take(4) {
        for y in catalog.iter().take(4) {
            for z in catalog.iter().take(4) {
                let xy = product_strat(x, y, 6);
                let xy_z = product_strat(&xy.object, z, 6);
                if xy_z.object.space.total_cells() > 50 {
                    continue;
                }
                let yz = product_strat(y, z, 6);
                let x_yz = product_strat(x, &yz.object, 6);
                let assoc = product_assoc_iso(&xy, &xy_z, x, y, z, &yz, &x_yz);
                assoc.validate(&xy_z.object, &x_yz.object).unwrap();
                assert!(assoc.is_iso(&xy_z.object, &x_yz.object));
                assoc_checked += 1;
            }
        }
    }
    line(
        "3 (EZ calculus + products)",
        sym_checked > 0 && assoc_checked > 0,
        &format!(
            "{} functoriality instances, profile (4,5,2), {} symmetry and {} associativity isos",
            checked, sym_checked, assoc_checked
        ),
    );
}

fn crate_nerve_complex() -> FiniteSimplicialSet {
    tstrat_core::nerve::nerve(&free_iso(), 2).complex
}

fn all_operators(p: usize, q: usize) -> Vec<SimplicialOperator> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; p + 1];
    loop {
        if cur.windows(2).all(|w| w[0] <= w[1]) {
            out.push(SimplicialOperator::new(cur.clone(), q).unwrap());
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
}

fn product_swap_iso(
    xy: &tstrat_core::strat::ProductStrat,
    x: &Prestrat,
    y: &Prestrat,
    yx: &tstrat_core::strat::ProductStrat,
) -> StratMap {
    let mut images = Vec::new();
    for m in 0..=xy.object.dim() {
        let mut level = Vec::new();
        for idx in 0..xy.object.space.cell_count(m) {
            let (fx, fy) = &xy.cells.pairs[m][idx];
            level.push(tstrat_core::strat::product_pair_simplex(yx, y, x, fy, fx));
        }
        images.push(level);
    }
    let mut labels = Vec::new();
    for m in 1..=xy.object.dim() {
        let mut level = Vec::new();
        for (k1, k2) in &xy.label_pairs[m - 1] {
            level.push(tstrat_core::strat::product_pair_key(yx, y, x, m, k2, k1));
        }
        labels.push(level);
    }
    StratMap {
        simp: tstrat_core::scomplex::SMap { images },
        labels,
    }
}

#[allow(clippy::too_many_arguments)]
fn product_assoc_iso(
    xy: &tstrat_core::strat::ProductStrat,
    xy_z: &tstrat_core::strat::ProductStrat,
    x: &Prestrat,
    y: &Prestrat,
    z: &Prestrat,
    yz: &tstrat_core::strat::ProductStrat,
    x_yz: &tstrat_core::strat::ProductStrat,
) -> StratMap {
    let mut images = Vec::new();
    for m in 0..=xy_z.object.dim() {
        let mut level = Vec::new();
        for idx in 0..xy_z.object.space.cell_count(m) {
            let (fxy, fz) = &xy_z.cells.pairs[m][idx];
            let fx = xy.proj1.simp.image(fxy);
            let fy = xy.proj2.simp.image(fxy);
            let fyz = tstrat_core::strat::product_pair_simplex(yz, y, z, &fy, fz);
            level.push(tstrat_core::strat::product_pair_simplex(
                x_yz, x, &yz.object, &fx, &fyz,
            ));
        }
        images.push(level);
    }
    let mut labels = Vec::new();
    for m in 1..=xy_z.object.dim() {
        let mut level = Vec::new();
        for (kxy, kz) in &xy_z.label_pairs[m - 1] {
            let kx = xy.proj1.image_key(m, kxy);
            let ky = xy.proj2.image_key(m, kxy);
            let kyz = tstrat_core::strat::product_pair_key(yz, y, z, m, &ky, kz);
            level.push(tstrat_core::strat::product_pair_key(
                x_yz, x, &yz.object, m, &kx, &kyz,
            ));
        }
        labels.push(level);
    }
    StratMap {
        simp: tstrat_core::scomplex::SMap { images },
        labels,
    }
}

#[test]
fn criterion_04_shape_fidelity() {
    let eq = delta3_eq();
    assert_eq!(eq.marked_nondegenerate_count(), 7);
    assert_eq!(eq.marked_profile(), vec![2, 4, 1]);
    assert_eq!(
        complicial_simplex(0, 1, CVariant::Plain).unwrap(),
        delta_t(1).unwrap()
    );
    for m in 1..=5usize {
        for k in 0..=m {
            let plain = complicial_simplex(k, m, CVariant::Plain).unwrap();
            let prime = complicial_simplex(k, m, CVariant::Prime).unwrap();
            let dpp = complicial_simplex(k, m, CVariant::DoublePrime).unwrap();
            let (c0, c1, c2) = (
                plain.marked_nondegenerate_count(),
                prime.marked_nondegenerate_count(),
                dpp.marked_nondegenerate_count(),
            );
            let expected_prime = if m < 2 {
                0
            } else {
                usize::from(k >= 1) + usize::from(k + 1 <= m)
            };
            let expected_dpp = usize::from(m >= 2);
            assert_eq!(c1 - c0, expected_prime, "prime delta at Δ^{}[{}]", k, m);
            assert_eq!(c2 - c1, expected_dpp, "double-prime delta at Δ^{}[{}]", k, m);
        }
    }
    line("4 (shape fidelity)", true, "Δ[3]_eq marks 7; Δ^0[1] = Δ[1]_t; variant deltas match for m ≤ 5");
}

#[test]
fn criterion_05_pushouts_and_stratification() {
    // the double-marking span in every dimension 1..=3
    for m in 1..=3usize {
        let d = delta(m);
        let dt = delta_t(m).unwrap();
        let phi = entire_inclusion(&d, &dt).unwrap();
        let po = pushout(&d, &dt, &dt, &phi, &phi).unwrap();
        assert!(!po.object.is_stratified());
        assert_eq!(po.object.extras(m).len(), 2);
        let r = reflector(&po.object);
        assert_eq!(r.object, dt);
        // the pushout in stratified sets gives the marked simplex directly
        let pos = pushout_strat(&d, &dt, &dt, &phi, &phi).unwrap();
        assert_eq!(pos.object, dt);
    }

    // pushouts of regular inclusions of stratified objects along arbitrary
    // maps stay stratified with a regular leg
    let mut regular_inclusions: Vec<(Prestrat, Prestrat, StratMap)> = Vec::new();
    for m in 1..=3usize {
        for k in 0..=m {
            regular_inclusions.push(complicial_horn(k, m).unwrap());
        }
    }
    let targets: Vec<Prestrat> = vec![
        nerve_rs(&free_iso(), 3).0,
        complicial_simplex(1, 2, CVariant::Plain).unwrap(),
        delta3_eq(),
        Prestrat::sharp(standard(2)),
        delta_t(2).unwrap(),
    ];
    let mut instances = 0usize;
    for (a, b, inc) in &regular_inclusions {
        assert_eq!(classify_mono(inc, a, b), MonoClass::Regular);
        for x in &targets {
            let (maps, _) = enumerate_hom(a, x, BUDGET);
            for f in maps.iter().take(2) {
                let po = pushout(a, b, x, inc, f).unwrap();
                assert!(
                    po.object.is_stratified(),
                    "pushout of {:?} not stratified",
                    inc.simp.images.len()
                );
                assert!(
                    po.leg_x.is_regular(x, &po.object),
                    "pushed-forward leg not regular"
                );
                instances += 1;
            }
        }
    }
    line(
        "5 (pushout/stratification)",
        instances >= 20,
        &format!(
            "double-marked span reflects to Δ[m]_t; {} regular pushout instances stay stratified",
            instances
        ),
    );
}

#[test]
fn criterion_06_appendix_b_replay() {
    let t = Instant::now();
    let mut cases = 0usize;
    for n in [0usize, 1] {
        for l in [-1isize, 0] {
            for m in [1usize, 2] {
                let (r, _) = verify_pp_lemma(PPLemma::B1, n, l, m, BUDGET).unwrap();
                assert!(r.exact, "B1 n={} l={} m={}", n, l, m);
                for (d, count) in &r.difference {
                    assert!(*count > 0);
                    assert!(
                        (*d as isize) > m as isize && (*d as isize) < l + 3,
                        "B1 difference outside (m, l+3): dim {}",
                        d
                    );
                }
                let (r2, _) = verify_pp_lemma(PPLemma::B2, n, l, m, BUDGET).unwrap();
                assert!(r2.exact, "B2 n={} l={} m={}", n, l, m);
                cases += 2;
            }
        }
        for l in [n as isize + 1, n as isize + 2] {
            for m in [1usize, 2] {
                let (r3, _) = verify_pp_lemma(PPLemma::B3, n, l, m, BUDGET).unwrap();
                assert!(r3.exact, "B3 n={} l={} m={}", n, l, m);
                let (r4, _) = verify_pp_lemma(PPLemma::B4, n, l, m, BUDGET).unwrap();
                assert!(r4.exact, "B4 n={} l={} m={}", n, l, m);
                cases += 2;
            }
        }
    }
    let elapsed = t.elapsed();
    line(
        "6 (Appendix B replay)",
        elapsed.as_secs() <= 600,
        &format!("{} schedules replayed exactly, {:.1?}", cases, elapsed),
    );
}

#[test]
fn criterion_07_retract_lemma() {
    let mut count = 0usize;
    // the double-marked pushout cases
    for m in 1..=3usize {
        let d = delta(m);
        let dt = delta_t(m).unwrap();
        let phi = entire_inclusion(&d, &dt).unwrap();
        let po = pushout(&d, &dt, &dt, &phi, &phi).unwrap();
        let f = phi.then(&po.leg_x);
        let r = build_retract(&d, &po.object, &f).unwrap();
        assert_eq!(r.rb, dt);
        count += 1;
    }
    // entire monos into objects with duplicated labels
    let stratified_catalog: Vec<Prestrat> = vec![
        delta_t(1).unwrap(),
        delta_t(2).unwrap(),
        complicial_simplex(1, 2, CVariant::Plain).unwrap(),
        complicial_simplex(0, 2, CVariant::Prime).unwrap(),
        complicial_simplex(1, 3, CVariant::DoublePrime).unwrap(),
        delta3_eq(),
        nerve_rs(&free_iso(), 2).0,
        Prestrat::sharp(standard(2)),
    ];
    for x in &stratified_catalog {
        assert!(x.is_stratified());
        // duplicate the first stored label
        let mut extra = x.extra.clone();
        'dup: for level in extra.iter_mut() {
            if let Some(l) = level.first().cloned() {
                level.push(l);
                break 'dup;
            }
        }
        let b = Prestrat::from_extras(x.space.clone(), extra);
        let f = entire_inclusion(x, &b).unwrap();
        let r = build_retract(x, &b, &f).unwrap();
        r.j.validate(&r.rb, &b).unwrap();
        count += 1;
    }
    // a doubly-labeled degenerate edge: the degeneracy label stays distinguished
    {
        let d1 = delta(1);
        let mut extra = vec![Vec::new()];
        extra[0].push(ExtraLabel {
            anchor: tstrat_core::scomplex::degenerate_vertex(Cell::new(0, 0), 1),
        });
        let b = Prestrat::from_extras(standard(1), extra);
        assert!(!b.is_stratified());
        let f = StratMap::identity(&d1);
        let r = build_retract(&d1, &b, &f).unwrap();
        // the image of the implicit degeneracy label is the degeneracy label
        let dv = tstrat_core::scomplex::degenerate_vertex(Cell::new(0, 0), 1);
        assert_eq!(
            r.j.image_key(1, &LabelKey::Zeta(dv.clone())),
            LabelKey::Zeta(dv)
        );
        count += 1;
    }
    // horn inclusions into marked targets with a duplicated label
    for (k, m) in [(0usize, 1usize), (1, 1), (0, 2), (1, 2), (2, 2), (1, 3), (2, 3), (0, 3)] {
        let (h, tgt, inc) = complicial_horn(k, m).unwrap();
        let mut extra = tgt.extra.clone();
        'dup2: for level in extra.iter_mut() {
            if let Some(l) = level.first().cloned() {
                level.push(l);
                break 'dup2;
            }
        }
        let b = Prestrat::from_extras(tgt.space.clone(), extra);
        let f = inc.then(&entire_inclusion(&tgt, &b).unwrap());
        let r = build_retract(&h, &b, &f).unwrap();
        r.j.validate(&r.rb, &b).unwrap();
        count += 1;
    }
    line(
        "7 (retract lemma)",
        count >= 20,
        &format!("{} monos with stratified source retract through the unit", count),
    );
}

#[test]
fn criterion_08_free_iso_case_study() {
    let t = Instant::now();
    let (rs, nerve) = nerve_rs(&free_iso(), 3);
    let report = is_n_complicial(&rs, 1, 3, BUDGET).unwrap();
    assert!(!report.pass);
    let mut sat_failures = 0;
    for g in &report.generators {
        assert!(!g.indeterminate, "budget exhausted on {}", g.family);
        if g.family.starts_with("saturation:") {
            assert_eq!(g.family, "saturation:-1");
            sat_failures += g.failures.len();
            // the witness is the alternating 3-simplex
            assert!(
                g.failures.iter().any(|w| w.contains("finv;f;finv")),
                "missing the alternating witness: {:?}",
                g.failures
            );
        } else {
            assert!(g.failures.is_empty(), "{} unexpectedly fails", g.family);
        }
    }
    assert!(sat_failures > 0);

    // the verdict is invariant under relabeling
    let (relabeled, _) = relabel(&rs, 17);
    let report2 = is_n_complicial(&relabeled, 1, 3, BUDGET).unwrap();
    assert_eq!(report.pass, report2.pass);
    for (g1, g2) in report.generators.iter().zip(&report2.generators) {
        assert_eq!(g1.family, g2.family);
        assert_eq!(g1.failures.len(), g2.failures.len());
        assert_eq!(g1.attaching_maps, g2.attaching_maps);
    }

    // N^RS(I) -> Δ[0] is not an acyclic fibration: the edge f admits no
    // marking extension along Δ[1] -> Δ[1]_t
    let g = generator(Family::CofMarking { m: 1 }).unwrap();
    let f_edge = nerve.index[&vec![2usize]];
    let (maps, _) = enumerate_hom(&g.source, &rs, BUDGET);
    let u = maps
        .iter()
        .find(|u| u.simp.image_of_cell(Cell::new(1, 0)) == &FormalSimplex::cell(f_edge))
        .unwrap();
    let p = LiftingProblem {
        a: &g.source,
        b: &g.target,
        x: &rs,
        i: &g.map,
        left: u,
        right: None,
    };
    assert_eq!(solve_lift(&p, BUDGET).unwrap(), LiftOutcome::NoLift);

    let elapsed = t.elapsed();
    line(
        "8 (free isomorphism case study)",
        elapsed.as_secs() <= 120,
        &format!(
            "horn+thinness+triviality lift, saturation fails at l=-1 with the alternating witness, {:.1?}",
            elapsed
        ),
    );
}

#[test]
fn criterion_09_unit_acyclic_fibration() {
    let t = Instant::now();
    // a catalog of prestratified, non-stratified objects
    let mut catalog: Vec<Prestrat> = Vec::new();
    for m in 1..=3usize {
        let d = delta(m);
        let dt = delta_t(m).unwrap();
        let phi = entire_inclusion(&d, &dt).unwrap();
        catalog.push(pushout(&d, &dt, &dt, &phi, &phi).unwrap().object);
    }
    let bases: Vec<Prestrat> = vec![
        complicial_simplex(1, 2, CVariant::Plain).unwrap(),
        complicial_simplex(0, 2, CVariant::DoublePrime).unwrap(),
        delta3_eq(),
        delta_t(2).unwrap(),
        nerve_rs(&free_iso(), 2).0,
        Prestrat::sharp(standard(2)),
    ];
    for x in &bases {
        let mut extra = x.extra.clone();
        'dup: for level in extra.iter_mut() {
            if let Some(l) = level.first().cloned() {
                level.push(l);
                break 'dup;
            }
        }
        catalog.push(Prestrat::from_extras(x.space.clone(), extra));
    }
    // a doubly labeled degenerate edge
    let mut extra = vec![Vec::new()];
    extra[0].push(ExtraLabel {
        anchor: tstrat_core::scomplex::degenerate_vertex(Cell::new(0, 0), 1),
    });
    catalog.push(Prestrat::from_extras(standard(1), extra));

    assert!(catalog.len() >= 10);
    for x in &catalog {
        assert!(!x.is_stratified());
        let rep = unit_acyclic_fibration_check(x, 3, BUDGET).unwrap();
        assert!(rep.pass, "unit check failed: {:?}", rep);
    }
    line(
        "9 (unit acyclic fibration)",
        true,
        &format!(
            "{} prestratified non-stratified objects lift against every cofibration, {:.1?}",
            catalog.len(),
            t.elapsed()
        ),
    );
}

#[test]
fn criterion_10_homotopy_and_solver_completeness() {
    // the two ends of the marked interval are elementarily homotopic
    let pt = delta(0);
    let interval = delta_t(1).unwrap();
    let (ends, _) = enumerate_hom(&pt, &interval, BUDGET);
    assert_eq!(ends.len(), 2);
    assert!(elementary_homotopy(&pt, &interval, &ends[0], &ends[1], BUDGET)
        .unwrap()
        .found());

    // the two vertex inclusions into the flat interval are not homotopic
    let flat = delta(1);
    let (vs, _) = enumerate_hom(&pt, &flat, BUDGET);
    assert_eq!(vs.len(), 2);
    assert_eq!(
        elementary_homotopy(&pt, &flat, &vs[0], &vs[1], BUDGET).unwrap(),
        LiftOutcome::NoLift
    );
    assert_eq!(
        homotopic(&pt, &flat, &vs[0], &vs[1], 2, BUDGET).unwrap(),
        HomotopyVerdict::NotHomotopic
    );

    // the solver agrees with brute-force enumeration on a problem catalog
    let targets: Vec<Prestrat> = vec![
        nerve_rs(&free_iso(), 3).0,
        complicial_simplex(1, 2, CVariant::Plain).unwrap(),
        delta_t(2).unwrap(),
        delta3_eq(),
        product_strat(&delta_t(1).unwrap(), &delta_t(1).unwrap(), 2).object,
    ];
    let mut gens = anodyne_generators(1, 2).unwrap();
    gens.extend(generating_cofibrations(2).unwrap());
    gens.push(generator(Family::Saturation { l: -1 }).unwrap());
    let mut problems = 0usize;
    for x in &targets {
        assert!(x.space.total_cells() <= 30 && x.dim() <= 3);
        for g in &gens {
            let (attachings, st) = enumerate_hom(&g.source, x, BUDGET);
            assert_eq!(st, SearchStatus::Complete);
            // brute force: all maps B -> X, restricted along i
            let (all_b, st2) = enumerate_hom(&g.target, x, BUDGET);
            assert_eq!(st2, SearchStatus::Complete);
            for u in &attachings {
                let p = LiftingProblem {
                    a: &g.source,
                    b: &g.target,
                    x,
                    i: &g.map,
                    left: u,
                    right: None,
                };
                let solver = solve_lift(&p, BUDGET).unwrap();
                let brute: Vec<&StratMap> = all_b
                    .iter()
                    .filter(|h| &g.map.then(h) == u)
                    .collect();
                match &solver {
                    LiftOutcome::Found(h) => {
                        assert!(
                            brute.iter().any(|b2| *b2 == h),
                            "solver lift not found by brute force"
                        );
                    }
                    LiftOutcome::NoLift => {
                        assert!(brute.is_empty(), "solver missed an existing lift");
                    }
                    LiftOutcome::Indeterminate => panic!("budget exhausted"),
                }
                problems += 1;
            }
        }
    }
    line(
        "10 (homotopy + solver completeness)",
        problems > 0,
        &format!("solver agrees with brute force on {} problems", problems),
    );
}
