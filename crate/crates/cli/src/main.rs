//! Command line front-end: loads a backend descriptor (quiver algebra or
//! mesh category), runs catalog, quotient, and theorem checks, and emits
//! text, JSON, or DOT.  Exit status: 0 if no check failed, 1 if some check
//! failed, 2 on usage or descriptor errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tricat::cat::{AddObj, Category, DeclaredTriangle};
use tricat::descriptor::{certify_triangles, parse_descriptor, AnyDescriptor};
use tricat::dot::{render, ArQuiverDot};
use tricat::field::PrimeField;
use tricat::ideal::{CategoryIdeal, QuotientCategory};
use tricat::mesh::MeshCategory;
use tricat::modcat::ModuleCategory;
use tricat::report::{exit_code, CheckReport};
use tricat::stable::StableCategory;
use tricat::theory::{
    check_condition_a, check_condition_b, check_dense,
    check_full, find_projective_generator, harada_sai_check, is_cluster_tilting,
    kernel_ideal_of_hom_functor, l_hat_monotonicity_check, quotient_and_ks_check,
    representability_suite, t_setup, theorem_suite, Backend,
};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser)]
#[command(name = "tricat", version, about = "Workbench for abelian quotients of concrete triangulated categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Backend descriptor: a quiver-algebra or mesh JSON file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the prime modulus of the descriptor
    #[arg(long, global = true)]
    field: Option<u64>,
    /// Cap on knitting steps when enumerating indecomposables
    #[arg(long, global = true, default_value_t = 256)]
    knit_cap: usize,
    /// Cap on the number of summand families enumerated by check-theorems
    #[arg(long, global = true, default_value_t = 4096)]
    cap_subsets: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposable objects of the backend
    Indecomposables,
    /// Emit the Auslander–Reiten quiver (solid = irreducible, dashed = τ)
    ArQuiver,
    /// List the stable category of a self-injective algebra
    Stable,
    /// Check fullness, density, and the pointwise conditions for a family
    CheckFunctor {
        /// Comma-separated object labels spanning the family T
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<String>,
    },
    /// Enumerate the cluster-tilting families
    FindClusterTilting,
    /// Form the additive quotient killing the listed objects
    Quotient {
        #[arg(long, value_delimiter = ',', required = true)]
        kill: Vec<String>,
    },
    /// Cross-validate the characterization theorems over all families
    CheckTheorems,
    /// Verify the composite-length bound on radical chains
    HaradaSai,
    /// Find a projective generator of the category (or of a quotient)
    ProjectiveGenerator {
        #[arg(long, value_delimiter = ',')]
        kill: Vec<String>,
    },
}

enum Loaded {
    Algebra(ModuleCategory<PrimeField>),
    Mesh(MeshCategory<PrimeField>, Vec<DeclaredTriangle<PrimeField>>),
}

struct Output {
    payload: serde_json::Value,
    text: String,
    dot: Option<String>,
    reports: Vec<CheckReport>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut v = out.payload;
                    v["reports"] = serde_json::to_value(&out.reports).unwrap();
                    serde_json::to_string_pretty(&v).unwrap() + "\n"
                }
                Format::Text => {
                    let mut s = out.text;
                    for r in &out.reports {
                        s.push_str(&render_report(r));
                    }
                    s
                }
                Format::Dot => match out.dot {
                    Some(d) => d,
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(2);
                    }
                },
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            ExitCode::from(exit_code(&out.reports) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn render_report(r: &CheckReport) -> String {
    let mut s = format!("[{}] {}\n", format!("{:?}", r.verdict).to_uppercase(), r.check);
    for w in &r.witnesses {
        s.push_str(&format!("    witness: {w}\n"));
    }
    for n in &r.notes {
        s.push_str(&format!("    note: {n}\n"));
    }
    s
}

fn load(cli: &Cli) -> Result<Loaded, String> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| "--config <file> is required".to_string())?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match parse_descriptor(&text).map_err(|e| e.to_string())? {
        AnyDescriptor::Algebra(a) => {
            let pres = a.build(cli.field).map_err(|e| e.to_string())?;
            let mc = ModuleCategory::build(pres, cli.knit_cap).map_err(|e| e.to_string())?;
            Ok(Loaded::Algebra(mc))
        }
        AnyDescriptor::Mesh(m) => {
            let (me, tris) = m.build(cli.field).map_err(|e| e.to_string())?;
            Ok(Loaded::Mesh(me, tris))
        }
    }
}

fn stable_of(mc: ModuleCategory<PrimeField>) -> Result<StableCategory<PrimeField>, String> {
    StableCategory::new(mc).map_err(|e| e.to_string())
}

fn resolve_stable(st: &StableCategory<PrimeField>, labels: &[String]) -> Result<AddObj, String> {
    let mut out = vec![];
    for l in labels {
        out.push(
            st.stable_index_of_label(l)
                .ok_or_else(|| format!("unknown stable object {l}"))?,
        );
    }
    Ok(AddObj::new(out))
}

fn resolve_mesh(me: &MeshCategory<PrimeField>, labels: &[String]) -> Result<AddObj, String> {
    let mut out = vec![];
    for l in labels {
        out.push(
            me.index_of_name(l)
                .ok_or_else(|| format!("unknown object {l}"))?,
        );
    }
    Ok(AddObj::new(out))
}

fn run(cli: &Cli) -> Result<Output, String> {
    let loaded = load(cli)?;
    match &cli.command {
        Command::Indecomposables => indecomposables(loaded),
        Command::ArQuiver => ar_quiver(loaded),
        Command::Stable => stable_catalog(loaded),
        Command::CheckFunctor { t } => check_functor(loaded, t),
        Command::FindClusterTilting => find_ct(loaded, cli.cap_subsets),
        Command::Quotient { kill } => quotient(loaded, kill),
        Command::CheckTheorems => check_theorems(loaded, cli.knit_cap, cli.cap_subsets),
        Command::HaradaSai => harada_sai(loaded),
        Command::ProjectiveGenerator { kill } => projective_generator(loaded, kill),
    }
}

fn indecomposables(loaded: Loaded) -> Result<Output, String> {
    match loaded {
        Loaded::Algebra(mc) => {
            let mut rows = vec![];
            let mut text = String::new();
            for i in 0..mc.num_indecs() {
                let m = &mc.indecs[i];
                rows.push(json!({
                    "label": mc.labels[i],
                    "dims": m.dims,
                    "projective": mc.is_projective[i],
                    "injective": mc.is_injective[i],
                    "tau": mc.tau[i].map(|t| mc.labels[t].clone()),
                }));
                text.push_str(&format!(
                    "{:8} dims {:?}{}{}\n",
                    mc.labels[i],
                    m.dims,
                    if mc.is_projective[i] { "  projective" } else { "" },
                    if mc.is_injective[i] { "  injective" } else { "" },
                ));
            }
            Ok(Output {
                payload: json!({ "indecomposables": rows }),
                text,
                dot: None,
                reports: vec![],
            })
        }
        Loaded::Mesh(me, _) => {
            let mut rows = vec![];
            let mut text = String::new();
            for x in 0..me.names.len() {
                rows.push(json!({
                    "label": me.names[x],
                    "tau": me.names[me.tau_obj[x]],
                    "sigma": me.names[me.sigma_obj[x]],
                }));
                text.push_str(&format!(
                    "{:8} tau {:8} sigma {}\n",
                    me.names[x], me.names[me.tau_obj[x]], me.names[me.sigma_obj[x]]
                ));
            }
            Ok(Output {
                payload: json!({ "indecomposables": rows }),
                text,
                dot: None,
                reports: vec![],
            })
        }
    }
}

fn ar_quiver(loaded: Loaded) -> Result<Output, String> {
    let (title, labels, arrows, tau) = match &loaded {
        Loaded::Algebra(mc) => {
            let arrows: Vec<(usize, usize, usize)> =
                mc.ar_edges.iter().map(|(&(s, t), &m)| (s, t, m)).collect();
            let tau: Vec<(usize, usize)> = (0..mc.num_indecs())
                .filter_map(|i| mc.tau[i].map(|t| (i, t)))
                .collect();
            ("module-category".to_string(), mc.labels.clone(), arrows, tau)
        }
        Loaded::Mesh(me, _) => {
            let arrows: Vec<(usize, usize, usize)> =
                me.ar_edges().iter().map(|(&(s, t), &m)| (s, t, m)).collect();
            let tau: Vec<(usize, usize)> = (0..me.names.len()).map(|x| (x, me.tau_obj[x])).collect();
            ("mesh-category".to_string(), me.names.clone(), arrows, tau)
        }
    };
    let dot = render(&ArQuiverDot {
        title,
        labels: labels.clone(),
        arrows: arrows.clone(),
        tau: tau.clone(),
    });
    let text = dot.clone();
    let payload = json!({
        "objects": labels,
        "arrows": arrows.iter().map(|&(s, t, m)| json!([labels[s], labels[t], m])).collect::<Vec<_>>(),
        "tau": tau.iter().map(|&(x, t)| json!([labels[x], labels[t]])).collect::<Vec<_>>(),
    });
    Ok(Output {
        payload,
        text,
        dot: Some(dot),
        reports: vec![],
    })
}

fn stable_catalog(loaded: Loaded) -> Result<Output, String> {
    let mc = match loaded {
        Loaded::Algebra(mc) => mc,
        Loaded::Mesh(..) => return Err("stable applies to algebra descriptors only".into()),
    };
    let st = stable_of(mc)?;
    let n = st.num_stable_objects();
    let mut rows = vec![];
    let mut text = String::new();
    for x in 0..n {
        let hom: Vec<usize> = (0..n).map(|y| st.hom_dim(x, y)).collect();
        rows.push(json!({
            "label": st.stable_label(x),
            "suspension": st.stable_label(st.sigma[x]),
            "hom_dims": hom,
        }));
        text.push_str(&format!(
            "{:8} sigma {:8} hom {:?}\n",
            st.stable_label(x),
            st.stable_label(st.sigma[x]),
            hom
        ));
    }
    Ok(Output {
        payload: json!({ "stable_objects": rows, "two_cy": st.is_2cy() }),
        text: format!("{text}2-Calabi-Yau: {}\n", st.is_2cy()),
        dot: None,
        reports: vec![],
    })
}

fn check_functor(loaded: Loaded, t_labels: &[String]) -> Result<Output, String> {
    let mut reports = vec![];
    match loaded {
        Loaded::Algebra(mc) => {
            let st = stable_of(mc)?;
            let t = resolve_stable(&st, t_labels)?;
            let backend = Backend::Stable(&st);
            functor_reports(&backend, &t, &mut reports)?;
            let kernel = kernel_ideal_of_hom_functor(&backend, &t_setup(&backend, &t, 256).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let q = QuotientCategory::new(&st, kernel).map_err(|e| e.to_string())?;
            reports.push(quotient_and_ks_check(&q));
            reports.extend(representability_suite(&st, &q, &t).map_err(|e| e.to_string())?);
        }
        Loaded::Mesh(me, tris) => {
            let t = resolve_mesh(&me, t_labels)?;
            reports.extend(certify_triangles(&me, &tris));
            let backend = Backend::Mesh(&me, &tris);
            functor_reports(&backend, &t, &mut reports)?;
            let kernel = kernel_ideal_of_hom_functor(&backend, &t_setup(&backend, &t, 256).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let q = QuotientCategory::new(&me, kernel).map_err(|e| e.to_string())?;
            reports.push(quotient_and_ks_check(&q));
            reports.extend(representability_suite(&me, &q, &t).map_err(|e| e.to_string())?);
        }
    }
    Ok(Output {
        payload: json!({ "family": t_labels }),
        text: format!("family: {}\n", t_labels.join(" + ")),
        dot: None,
        reports,
    })
}

fn functor_reports(
    backend: &Backend<PrimeField>,
    t: &AddObj,
    reports: &mut Vec<CheckReport>,
) -> Result<(), String> {
    let setup = t_setup(backend, t, 256).map_err(|e| e.to_string())?;
    reports.push(check_full(backend, &setup));
    reports.push(check_dense(backend, &setup));
    reports.push(check_condition_a(backend, &setup).map_err(|e| e.to_string())?);
    reports.push(check_condition_b(backend, &setup, false).map_err(|e| e.to_string())?);
    Ok(())
}

fn find_ct(loaded: Loaded, cap: usize) -> Result<Output, String> {
    let run = |backend: &Backend<PrimeField>| -> Result<Output, String> {
        let cat = backend.cat();
        let n = cat.num_objects();
        if n > 16 {
            return Err(format!("{n} objects is too many for subset enumeration"));
        }
        let mut found = vec![];
        let mut seen = 0usize;
        let mut truncated = false;
        for mask in 1usize..(1 << n) {
            if seen >= cap {
                truncated = true;
                break;
            }
            seen += 1;
            let t = AddObj::new((0..n).filter(|i| mask & (1 << i) != 0).collect());
            if is_cluster_tilting(backend, &t).is_pass() {
                found.push(
                    t.0.iter()
                        .map(|&x| cat.object_label(x))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let mut report = CheckReport::pass("cluster-tilting-enumeration").note(format!(
            "{} cluster-tilting families among {seen} candidates",
            found.len()
        ));
        if truncated {
            report = report.note("enumeration truncated by --cap-subsets");
        }
        let text = found
            .iter()
            .map(|f| f.join(" + ") + "\n")
            .collect::<String>();
        Ok(Output {
            payload: json!({ "cluster_tilting": found }),
            text,
            dot: None,
            reports: vec![report],
        })
    };
    match loaded {
        Loaded::Algebra(mc) => {
            let st = stable_of(mc)?;
            run(&Backend::Stable(&st))
        }
        Loaded::Mesh(me, tris) => run(&Backend::Mesh(&me, &tris)),
    }
}

fn quotient(loaded: Loaded, kill: &[String]) -> Result<Output, String> {
    fn describe<C: Category<PrimeField>>(
        base: &C,
        killed: &[usize],
    ) -> Result<Output, String> {
        let ideal = CategoryIdeal::generate(base, killed, &[]).map_err(|e| e.to_string())?;
        let q = QuotientCategory::new(base, ideal).map_err(|e| e.to_string())?;
        let mut reports = vec![quotient_and_ks_check(&q)];
        reports.push(l_hat_monotonicity_check(&q));
        let survivors = q.nonzero_objects();
        let rad = tricat::cat::category_radical(&q).map_err(|e| e.to_string())?;
        let sq = rad.square(&q);
        let mut arrows = vec![];
        for &x in &survivors {
            for &y in &survivors {
                let m = rad.spaces[x][y].dim() - sq[x][y].dim();
                if m > 0 {
                    arrows.push((x, y, m));
                }
            }
        }
        let labels: Vec<String> = (0..base.num_objects())
            .map(|x| base.object_label(x))
            .collect();
        let dot = render(&ArQuiverDot {
            title: "quotient".into(),
            labels: labels.clone(),
            arrows: arrows.clone(),
            tau: vec![],
        });
        let mut text = String::new();
        for &x in &survivors {
            let homs: Vec<usize> = survivors.iter().map(|&y| q.hom_dim(x, y)).collect();
            text.push_str(&format!("{:8} hom {:?}\n", labels[x], homs));
        }
        for &(s, t, m) in &arrows {
            text.push_str(&format!("irreducible {} -> {} (multiplicity {m})\n", labels[s], labels[t]));
        }
        let payload = json!({
            "survivors": survivors.iter().map(|&x| labels[x].clone()).collect::<Vec<_>>(),
            "irreducible_arrows": arrows
                .iter()
                .map(|&(s, t, m)| json!([labels[s], labels[t], m]))
                .collect::<Vec<_>>(),
        });
        Ok(Output {
            payload,
            text,
            dot: Some(dot),
            reports,
        })
    }
    match loaded {
        Loaded::Algebra(mc) => {
            let st = stable_of(mc)?;
            let killed = resolve_stable(&st, kill)?;
            describe(&st, &killed.0)
        }
        Loaded::Mesh(me, _) => {
            let killed = resolve_mesh(&me, kill)?;
            describe(&me, &killed.0)
        }
    }
}

fn check_theorems(loaded: Loaded, knit_cap: usize, cap: usize) -> Result<Output, String> {
    let run = |backend: &Backend<PrimeField>| -> Result<Output, String> {
        let (rows, reports) = theorem_suite(backend, knit_cap, cap).map_err(|e| e.to_string())?;
        let fmt = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "?",
        };
        let mut text = format!(
            "{:24} {:>5} {:>5} {:>4} {:>4} {:>5} {:>4} {:>3}\n",
            "family", "full", "dense", "a", "b", "b*", "c", "ct"
        );
        let mut jrows = vec![];
        for r in &rows {
            text.push_str(&format!(
                "{:24} {:>5} {:>5} {:>4} {:>4} {:>5} {:>4} {:>3}\n",
                r.labels.join("+"),
                fmt(r.full),
                fmt(r.dense),
                fmt(r.a),
                fmt(r.b),
                fmt(r.bstar),
                fmt(r.c),
                if r.ct { "yes" } else { "no" },
            ));
            jrows.push(json!({
                "family": r.labels,
                "full": r.full, "dense": r.dense,
                "a": r.a, "b": r.b, "b_star": r.bstar, "c": r.c,
                "cluster_tilting": r.ct,
                "note": r.note,
            }));
        }
        Ok(Output {
            payload: json!({ "families": jrows }),
            text,
            dot: None,
            reports,
        })
    };
    match loaded {
        Loaded::Algebra(mc) => {
            let st = stable_of(mc)?;
            run(&Backend::Stable(&st))
        }
        Loaded::Mesh(me, tris) => run(&Backend::Mesh(&me, &tris)),
    }
}

fn harada_sai(loaded: Loaded) -> Result<Output, String> {
    let mc = match loaded {
        Loaded::Algebra(mc) => mc,
        Loaded::Mesh(..) => return Err("harada-sai applies to algebra descriptors only".into()),
    };
    let report = harada_sai_check(&mc, 10_000).map_err(|e| e.to_string())?;
    Ok(Output {
        payload: json!({}),
        text: String::new(),
        dot: None,
        reports: vec![report],
    })
}

fn projective_generator(loaded: Loaded, kill: &[String]) -> Result<Output, String> {
    let mc = match loaded {
        Loaded::Algebra(mc) => mc,
        Loaded::Mesh(..) => {
            return Err("projective-generator applies to algebra descriptors only".into())
        }
    };
    if kill.is_empty() {
        let (p, report) = find_projective_generator(&mc).map_err(|e| e.to_string())?;
        let labels: Vec<String> = p.0.iter().map(|&x| mc.labels[x].clone()).collect();
        return Ok(Output {
            payload: json!({ "generator": labels }),
            text: format!("generator: {}\n", labels.join(" + ")),
            dot: None,
            reports: vec![report],
        });
    }
    let st = stable_of(mc)?;
    let killed = resolve_stable(&st, kill)?;
    let ideal = CategoryIdeal::generate(&st, &killed.0, &[]).map_err(|e| e.to_string())?;
    let q = QuotientCategory::new(&st, ideal).map_err(|e| e.to_string())?;
    let (p, report) = find_projective_generator(&q).map_err(|e| e.to_string())?;
    let labels: Vec<String> = p.0.iter().map(|&x| st.stable_label(x).to_string()).collect();
    Ok(Output {
        payload: json!({ "generator": labels }),
        text: format!("generator: {}\n", labels.join(" + ")),
        dot: None,
        reports: vec![report, quotient_and_ks_check(&q)],
    })
}
