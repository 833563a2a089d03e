//! The command-line surface.
//!
//! Every subcommand prints a single versioned report on standard output and
//! exits with 0 (pass), 1 (definite failure), 2 (indeterminate, budget), or
//! 3 (input error). Constructions (shapes, products, nerves, ...) emit the
//! canonical document formats from [`crate::io`] inside the report `data`.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::io::{
    self, category_from_doc, map_from_doc, map_to_doc, strat_from_doc, strat_to_doc, CategoryDoc,
    MapDoc, StratDoc,
};
use crate::lifting::{
    self, is_n_complicial, rlp_against, solve_lift, verify_pp_lemma, HomotopyVerdict,
    LiftOutcome, LiftingProblem, PPLemma,
};
use crate::nerve::{nerve, nerve_rs, saturate_nerve};
use crate::report::{Report, Verdict, EXIT_INPUT_ERROR};
use crate::scomplex::{boundary, standard};
use crate::shapes::{
    anodyne_generators, complicial_horn, complicial_simplex, delta3_eq, generating_cofibrations,
    generator, saturation_pair, CVariant, Family,
};
use crate::strat::{
    classify_mono, delta, delta_t, join_strat, marked_difference, product_strat, pushout,
    pushout_strat, reflector, relabel, Prestrat, StratMap,
};
use crate::tdelta::{
    hom_set, parse_morphism, parse_object, reedy_factorize, sections_of, validate_presentation,
};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "tstrat")]
#[command(about = "A computational kernel for finite (pre)stratified simplicial sets")]
#[command(version)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Search budget, in backtracking nodes
    #[arg(long, global = true, default_value_t = 5_000_000)]
    pub budget: u64,

    /// Seed for randomized relabeling of the input object
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
pub enum Commands {
    /// Emit a named shape in the canonical document format
    Shape {
        #[command(subcommand)]
        shape: ShapeCmd,
    },
    /// List the elementary anodyne extensions within a dimension bound
    Gens {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// list the generating cofibrations instead
        #[arg(long)]
        cofibrations: bool,
        /// include the two-sided saturation family
        #[arg(long)]
        two_sided_saturation: bool,
    },
    /// Levelwise product of two objects, with projections
    Product { a: PathBuf, b: PathBuf },
    /// Join of two stratified objects
    Join { a: PathBuf, b: PathBuf },
    /// Pushout of f along a monomorphism i (same source object)
    Pushout {
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// apply the reflector afterwards (pushout in stratified sets)
        #[arg(long)]
        reflect: bool,
    },
    /// Reflect a prestratified object into stratified ones
    Reflect { file: PathBuf },
    /// Classify a morphism as not-mono, entire, regular, or plain-mono
    Classify { map: PathBuf },
    /// Solve one lifting problem, or check the RLP against a generator
    Lift {
        /// generator (e.g. horn:1,2) or a map document
        #[arg(long)]
        i: String,
        /// the object to lift into
        #[arg(long)]
        target: PathBuf,
        /// an attaching map; when omitted, all attaching maps are checked
        #[arg(long)]
        left: Option<PathBuf>,
    },
    /// Check the right lifting property against all elementary anodyne maps
    Complicial {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// restrict to a comma-separated subset of families
        /// (horn, thinness, triviality, saturation)
        #[arg(long)]
        families: Option<String>,
    },
    /// Replay the schedule of a pushout-product lemma
    VerifyLemma {
        lemma: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        l: isize,
        #[arg(long)]
        m: usize,
    },
    /// Build the retract section of the unit along a monomorphism
    Retract { f: PathBuf },
    /// Decide marked-interval homotopy between two parallel maps
    Homotopy {
        #[arg(long)]
        u0: PathBuf,
        #[arg(long)]
        u1: PathBuf,
        /// zig-zag length bound
        #[arg(long, default_value_t = 2)]
        zigzag: usize,
        /// only look for a single elementary homotopy
        #[arg(long)]
        elementary: bool,
    },
    /// Nerve of a finite category
    Nerve {
        cat: PathBuf,
        /// Roberts–Street stratification
        #[arg(long)]
        rs: bool,
        /// mark the isomorphism 1-simplices on top of the stratification
        #[arg(long)]
        saturate: bool,
        #[arg(long)]
        dim: usize,
    },
    /// Check the concrete model of tΔ against its presentation
    ValidateTdelta {
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = 6)]
        max_word_length: usize,
        /// Reedy-factorize a morphism given as `[m](t) -> [n](t) : images`
        #[arg(long)]
        factorize: Option<String>,
        /// enumerate a hom-set, given as two objects `[m](t)`
        #[arg(long, num_args = 2)]
        hom: Option<Vec<String>>,
        /// enumerate the sections of a morphism
        #[arg(long)]
        sections: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum ShapeCmd {
    /// Δ[m]
    Standard { m: usize },
    /// ∂Δ[m]
    Boundary { m: usize },
    /// Δ[m]_t
    DeltaT { m: usize },
    /// Δ[m]^♯
    Sharp { m: usize },
    /// Δ^k[m] and its primed variants
    Csimplex {
        k: usize,
        m: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
    },
    /// Λ^k[m] with its inclusion into Δ^k[m]
    Horn { k: usize, m: usize },
    /// the saturation extension Δ[l]⋆Δ[3]_eq -> Δ[l]⋆Δ[3]^♯
    Saturation {
        #[arg(allow_hyphen_values = true)]
        l: isize,
    },
    /// Δ[3]_eq
    Delta3Eq,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum VariantArg {
    Plain,
    Prime,
    DoublePrime,
}

impl From<VariantArg> for CVariant {
    fn from(v: VariantArg) -> CVariant {
        match v {
            VariantArg::Plain => CVariant::Plain,
            VariantArg::Prime => CVariant::Prime,
            VariantArg::DoublePrime => CVariant::DoublePrime,
        }
    }
}

fn read_strat(path: &PathBuf) -> Result<Prestrat> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {}", path.display(), e)))?;
    let doc: StratDoc = io::parse_json(&text)?;
    strat_from_doc(&doc)
}

fn read_map(path: &PathBuf) -> Result<(Prestrat, Prestrat, StratMap)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {}", path.display(), e)))?;
    let doc: MapDoc = io::parse_json(&text)?;
    map_from_doc(&doc)
}

fn read_category(path: &PathBuf) -> Result<crate::nerve::FiniteCategory> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {}", path.display(), e)))?;
    let doc: CategoryDoc = io::parse_json(&text)?;
    category_from_doc(&doc)
}

fn object_summary(x: &Prestrat) -> serde_json::Value {
    json!({
        "dim": x.dim(),
        "profile": x.space.profile(),
        "marked_nondegenerate": x.marked_profile(),
        "stratified": x.is_stratified(),
    })
}

/// Runs one invocation; returns the exit code and the report text.
pub fn run(argv: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let uses_help = e.use_stderr();
            return (if uses_help { EXIT_INPUT_ERROR } else { 0 }, e.to_string());
        }
    };
    let command_echo = argv[1..].join(" ");
    let format = cli.format;
    match dispatch(&cli, &command_echo) {
        Ok(report) => {
            let text = match format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            };
            (report.verdict.exit_code(), text)
        }
        Err(err) => {
            let diag = json!({
                "format": crate::report::REPORT_FORMAT,
                "command": command_echo,
                "error": err.to_string(),
            });
            let text = match format {
                OutputFormat::Json => serde_json::to_string_pretty(&diag).unwrap(),
                OutputFormat::Text => format!("error: {}\n", err),
            };
            (EXIT_INPUT_ERROR, text)
        }
    }
}

fn dispatch(cli: &Cli, echo: &str) -> Result<Report> {
    let budget = cli.budget;
    match &cli.command {
        Commands::Shape { shape } => run_shape(shape, echo),
        Commands::Gens {
            n,
            dim,
            cofibrations,
            two_sided_saturation,
        } => {
            let gens = if *cofibrations {
                generating_cofibrations(*dim)?
            } else {
                anodyne_generators(*n, *dim)?
            };
            let mut rows: Vec<serde_json::Value> = gens
                .iter()
                .map(|g| {
                    json!({
                        "family": g.family.to_string(),
                        "source": object_summary(&g.source),
                        "target": object_summary(&g.target),
                        "class": classify_mono(&g.map, &g.source, &g.target),
                    })
                })
                .collect();
            if *two_sided_saturation && !*cofibrations {
                let mut m = -1isize;
                while m + 4 <= *dim as isize {
                    let mut l = -1isize;
                    while m + 4 + l + 1 <= *dim as isize {
                        let (src, dst, map) = crate::shapes::saturation_pair_two_sided(m, l)?;
                        rows.push(json!({
                            "family": format!("saturation-two-sided:{},{}", m, l),
                            "source": object_summary(&src),
                            "target": object_summary(&dst),
                            "class": classify_mono(&map, &src, &dst),
                        }));
                        l += 1;
                    }
                    m += 1;
                }
            }
            Ok(
                Report::new(echo, Verdict::Pass, json!({ "count": rows.len(), "generators": rows }))
                    .with_bounds(Some(*dim), None),
            )
        }
        Commands::Product { a, b } => {
            let x = read_strat(a)?;
            let y = read_strat(b)?;
            let p = product_strat(&x, &y, x.dim() + y.dim());
            Ok(Report::new(
                echo,
                Verdict::Pass,
                json!({
                    "object": strat_to_doc(&p.object),
                    "proj1": map_to_doc(&p.object, &x, &p.proj1),
                    "proj2": map_to_doc(&p.object, &y, &p.proj2),
                }),
            ))
        }
        Commands::Join { a, b } => {
            let x = read_strat(a)?;
            let y = read_strat(b)?;
            let j = join_strat(&x, &y)?;
            Ok(Report::new(
                echo,
                Verdict::Pass,
                json!({
                    "object": strat_to_doc(&j.object),
                    "summary": object_summary(&j.object),
                }),
            ))
        }
        Commands::Pushout { i, f, reflect } => {
            let (ia, ib, imap) = read_map(i)?;
            let (fa, fx, fmap) = read_map(f)?;
            if ia != fa {
                return Err(Error::MalformedInput(
                    "the two maps must share their source".into(),
                ));
            }
            let po = if *reflect {
                pushout_strat(&ia, &ib, &fx, &imap, &fmap)?
            } else {
                pushout(&ia, &ib, &fx, &imap, &fmap)?
            };
            Ok(Report::new(
                echo,
                Verdict::Pass,
                json!({
                    "object": strat_to_doc(&po.object),
                    "leg_x": map_to_doc(&fx, &po.object, &po.leg_x),
                    "leg_b": map_to_doc(&ib, &po.object, &po.leg_b),
                    "stratified": po.object.is_stratified(),
                }),
            ))
        }
        Commands::Reflect { file } => {
            let x = read_strat(file)?;
            let r = reflector(&x);
            Ok(Report::new(
                echo,
                Verdict::Pass,
                json!({
                    "object": strat_to_doc(&r.object),
                    "unit": map_to_doc(&x, &r.object, &r.unit),
                    "was_stratified": x.is_stratified(),
                }),
            ))
        }
        Commands::Classify { map } => {
            let (src, dst, f) = read_map(map)?;
            let class = classify_mono(&f, &src, &dst);
            let diff = if f.is_entire(&src, &dst) {
                let d = marked_difference(&f, &src, &dst)?;
                json!(d
                    .iter()
                    .map(|(m, v)| json!({"dim": m, "count": v.len()}))
                    .collect::<Vec<_>>())
            } else {
                json!(null)
            };
            Ok(Report::new(
                echo,
                Verdict::Pass,
                json!({
                    "class": class,
                    "is_mono": f.is_mono(&src, &dst),
                    "is_entire": f.is_entire(&src, &dst),
                    "is_regular": f.is_regular(&src, &dst),
                    "is_iso": f.is_iso(&src, &dst),
                    "marked_difference": diff,
                }),
            ))
        }
        Commands::Lift { i, target, left } => {
            let x = read_strat(target)?;
            let (ga, gb, gmap) = match Family::parse(i) {
                Ok(fam) => {
                    let g = generator(fam)?;
                    (g.source, g.target, g.map)
                }
                Err(_) => read_map(&PathBuf::from(i))?,
            };
            match left {
                Some(path) => {
                    let (la, lx, lmap) = read_map(path)?;
                    if la != ga {
                        return Err(Error::MalformedInput(
                            "attaching map source does not match the generator".into(),
                        ));
                    }
                    if lx != x {
                        return Err(Error::MalformedInput(
                            "attaching map target does not match --target".into(),
                        ));
                    }
                    let p = LiftingProblem {
                        a: &ga,
                        b: &gb,
                        x: &x,
                        i: &gmap,
                        left: &lmap,
                        right: None,
                    };
                    let (verdict, data) = match solve_lift(&p, budget)? {
                        LiftOutcome::Found(h) => (
                            Verdict::Pass,
                            json!({"lift": map_to_doc(&gb, &x, &h)}),
                        ),
                        LiftOutcome::NoLift => (Verdict::Fail, json!({"lift": null})),
                        LiftOutcome::Indeterminate => {
                            (Verdict::Indeterminate, json!({"lift": null}))
                        }
                    };
                    Ok(Report::new(echo, verdict, data).with_bounds(None, Some(budget)))
                }
                None => {
                    let g = crate::shapes::GeneratorDescriptor {
                        family: Family::parse(i).unwrap_or(Family::CofBoundary { m: 0 }),
                        source: ga,
                        target: gb,
                        map: gmap,
                    };
                    let v = rlp_against(&x, &g, budget)?;
                    let verdict = if v.indeterminate {
                        Verdict::Indeterminate
                    } else if v.failures.is_empty() {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    };
                    Ok(Report::new(echo, verdict, serde_json::to_value(&v).unwrap())
                        .with_bounds(None, Some(budget)))
                }
            }
        }
        Commands::Complicial {
            file,
            n,
            dim,
            families,
        } => {
            let mut x = read_strat(file)?;
            let mut seed_note = json!(null);
            if let Some(seed) = cli.seed {
                let (y, _) = relabel(&x, seed);
                seed_note = json!(seed);
                x = y;
            }
            let mut report = is_n_complicial(&x, *n, *dim, budget)?;
            if let Some(fams) = families {
                let wanted: Vec<&str> = fams.split(',').map(|s| s.trim()).collect();
                report.generators.retain(|g| {
                    wanted
                        .iter()
                        .any(|w| g.family.starts_with(&format!("{}:", w)))
                });
                report.pass = report.generators.iter().all(|g| g.failures.is_empty())
                    && !report.generators.iter().any(|g| g.indeterminate);
                report.indeterminate = report.generators.iter().any(|g| g.indeterminate);
            }
            let verdict = if report.indeterminate {
                Verdict::Indeterminate
            } else if report.pass {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let mut data = serde_json::to_value(&report).unwrap();
            data["seed"] = seed_note;
            Ok(Report::new(echo, verdict, data).with_bounds(Some(*dim), Some(budget)))
        }
        Commands::VerifyLemma { lemma, n, l, m } => {
            let lem = PPLemma::parse(lemma)?;
            let (rep, _) = verify_pp_lemma(lem, *n, *l, *m, budget)?;
            let verdict = if rep.exact { Verdict::Pass } else { Verdict::Fail };
            Ok(Report::new(echo, verdict, serde_json::to_value(&rep).unwrap())
                .with_bounds(None, Some(budget)))
        }
        Commands::Retract { f } => {
            let (a, b, fmap) = read_map(f)?;
            let r = lifting::build_retract(&a, &b, &fmap)?;
            Ok(Report::new(
                echo,
                Verdict::Pass,
                json!({
                    "rb": strat_to_doc(&r.rb),
                    "j": map_to_doc(&r.rb, &b, &r.j),
                    "unit": map_to_doc(&b, &r.rb, &r.unit),
                    "rf": map_to_doc(&a, &r.rb, &r.rf),
                }),
            ))
        }
        Commands::Homotopy {
            u0,
            u1,
            zigzag,
            elementary,
        } => {
            let (x0, y0, m0) = read_map(u0)?;
            let (x1, y1, m1) = read_map(u1)?;
            if x0 != x1 || y0 != y1 {
                return Err(Error::MalformedInput("maps are not parallel".into()));
            }
            if *elementary {
                let out = lifting::elementary_homotopy(&x0, &y0, &m0, &m1, budget)?;
                let (verdict, data) = match out {
                    LiftOutcome::Found(h) => {
                        let cyl = lifting::cylinder(&x0)?;
                        (
                            Verdict::Pass,
                            json!({"homotopy": map_to_doc(&cyl.object, &y0, &h)}),
                        )
                    }
                    LiftOutcome::NoLift => (Verdict::Fail, json!({"homotopy": null})),
                    LiftOutcome::Indeterminate => {
                        (Verdict::Indeterminate, json!({"homotopy": null}))
                    }
                };
                Ok(Report::new(echo, verdict, data).with_bounds(None, Some(budget)))
            } else {
                let v = lifting::homotopic(&x0, &y0, &m0, &m1, *zigzag, budget)?;
                let verdict = match v {
                    HomotopyVerdict::Homotopic => Verdict::Pass,
                    HomotopyVerdict::NotHomotopic => Verdict::Fail,
                    HomotopyVerdict::Indeterminate => Verdict::Indeterminate,
                };
                Ok(Report::new(
                    echo,
                    verdict,
                    json!({"verdict": v, "zigzag_budget": zigzag}),
                )
                .with_bounds(None, Some(budget)))
            }
        }
        Commands::Nerve {
            cat,
            rs,
            saturate,
            dim,
        } => {
            let c = read_category(cat)?;
            let data = if *saturate {
                let (sat, cmp) = saturate_nerve(&c, *dim)?;
                let (rsn, _) = nerve_rs(&c, *dim);
                json!({
                    "object": strat_to_doc(&sat),
                    "comparison": map_to_doc(&rsn, &sat, &cmp),
                })
            } else if *rs {
                let (rsn, _) = nerve_rs(&c, *dim);
                json!({"object": strat_to_doc(&rsn), "summary": object_summary(&rsn)})
            } else {
                let n = nerve(&c, *dim);
                let flat = Prestrat::flat(n.complex);
                json!({"object": strat_to_doc(&flat), "summary": object_summary(&flat)})
            };
            Ok(Report::new(echo, Verdict::Pass, data).with_bounds(Some(*dim), None))
        }
        Commands::ValidateTdelta {
            max_degree,
            max_word_length,
            factorize,
            hom,
            sections,
        } => {
            if let Some(text) = factorize {
                let f = parse_morphism(text)?;
                let r = reedy_factorize(&f);
                return Ok(Report::new(
                    echo,
                    Verdict::Pass,
                    json!({
                        "morphism": f.to_string(),
                        "minus": r.minus.to_string(),
                        "plus": r.plus.to_string(),
                    }),
                ));
            }
            if let Some(objs) = hom {
                let a = parse_object(&objs[0])?;
                let b = parse_object(&objs[1])?;
                let h = hom_set(a, b);
                return Ok(Report::new(
                    echo,
                    Verdict::Pass,
                    json!({
                        "size": h.len(),
                        "morphisms": h.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    }),
                ));
            }
            if let Some(text) = sections {
                let f = parse_morphism(text)?;
                let s = sections_of(&f);
                return Ok(Report::new(
                    echo,
                    Verdict::Pass,
                    json!({
                        "size": s.len(),
                        "sections": s.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    }),
                ));
            }
            let rep = validate_presentation(*max_degree, *max_word_length)?;
            let verdict = if rep.pass {
                Verdict::Pass
            } else if rep.incomplete {
                Verdict::Indeterminate
            } else {
                Verdict::Fail
            };
            Ok(Report::new(echo, verdict, serde_json::to_value(&rep).unwrap())
                .with_bounds(Some(*max_degree), Some(*max_word_length as u64)))
        }
    }
}

fn run_shape(shape: &ShapeCmd, echo: &str) -> Result<Report> {
    let data = match shape {
        ShapeCmd::Standard { m } => json!({"object": strat_to_doc(&delta(*m))}),
        ShapeCmd::Boundary { m } => {
            json!({"object": strat_to_doc(&Prestrat::flat(boundary(*m)))})
        }
        ShapeCmd::DeltaT { m } => json!({"object": strat_to_doc(&delta_t(*m)?)}),
        ShapeCmd::Sharp { m } => {
            json!({"object": strat_to_doc(&Prestrat::sharp(standard(*m)))})
        }
        ShapeCmd::Csimplex { k, m, variant } => {
            let x = complicial_simplex(*k, *m, (*variant).into())?;
            json!({"object": strat_to_doc(&x), "summary": object_summary(&x)})
        }
        ShapeCmd::Horn { k, m } => {
            let (h, t, inc) = complicial_horn(*k, *m)?;
            json!({
                "object": strat_to_doc(&h),
                "inclusion": map_to_doc(&h, &t, &inc),
            })
        }
        ShapeCmd::Saturation { l } => {
            let p = saturation_pair(*l)?;
            json!({
                "source": strat_to_doc(&p.source),
                "target": strat_to_doc(&p.target),
                "map": map_to_doc(&p.source, &p.target, &p.map),
            })
        }
        ShapeCmd::Delta3Eq => {
            let x = delta3_eq();
            json!({"object": strat_to_doc(&x), "summary": object_summary(&x)})
        }
    };
    Ok(Report::new(echo, Verdict::Pass, data))
}
