use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cherednik::crosscheck::{crosscheck, CrosscheckConfig};
use cherednik::diagonal::{chi_equivalent, chi_sequence, i_diagonals, sigma_k, ChiEquivalence, TransportMap};
use cherednik::io::{parse_context, render_ascii, render_svg, Format, LoadedContext, Output};
use cherednik::kn::{decomp_number, kn_matrix_for_gamma, nested_entry, Engine};
use cherednik::tableaux::{delta_character, enumerate_sstd, Mode, Tableau};
use cherednik::tensor::{factor_check, FactoredContext};
use cherednik::terrain::{decorate, terrain_of, well_nested_families};
use cherednik::{Error, Multipartition, Residue, Result};

#[derive(Parser)]
#[command(name = "cherednik", version, about = "Decomposition numbers, tableaux and chi-sequences for diagrammatic Cherednik algebras")]
struct Cli {
    /// Context file (JSON).
    #[arg(long, global = true)]
    context: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel engines.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Nested,
    Kn,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderArg {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check a context file and summarize it.
    Validate,
    /// List Γ with γ⁺, γ⁻ and the Hasse diagram of dominance.
    GammaSet,
    /// Semistandard tableaux of shape λ and weight μ, with degrees.
    Tableaux {
        lambda: Multipartition,
        mu: Multipartition,
        /// Enumerate every tableau rather than only those fixing γ.
        #[arg(long)]
        general: bool,
    },
    /// The graded character Dim Δ_μ(λ).
    DeltaChar {
        lambda: Multipartition,
        mu: Multipartition,
        #[arg(long)]
        general: bool,
    },
    /// Graded decomposition numbers.
    Decomp {
        #[arg(long, value_enum, default_value_t = EngineArg::Both)]
        engine: EngineArg,
        #[arg(long, num_args = 2, value_names = ["LAMBDA", "MU"], conflicts_with = "matrix")]
        pair: Option<Vec<Multipartition>>,
        #[arg(long)]
        matrix: bool,
    },
    /// The terrain of μ, optionally decorated by λ.
    Terrain {
        mu: Multipartition,
        #[arg(long)]
        decorate: Option<Multipartition>,
        #[arg(long)]
        residue: Option<i64>,
        #[arg(long, value_enum)]
        render: Option<RenderArg>,
    },
    /// The χ-sequence of γ, optionally compared with another context.
    Chi {
        #[arg(long)]
        residue: Option<i64>,
        #[arg(long)]
        compare: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// The bijection Γ → Γ̄ onto another single-residue context.
    Transport {
        #[arg(long)]
        target: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LAMBDA", "MU"])]
        pair: Option<Vec<Multipartition>>,
    },
    /// Split a Γ over non-adjacent residues into single-residue factors.
    TensorFactor {
        #[arg(long)]
        verify: bool,
    },
    /// Compare the nested and peeling engines on random contexts.
    Crosscheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn load(path: &Path) -> Result<LoadedContext> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_context(&text)
}

fn context(cli: &Cli) -> Result<LoadedContext> {
    let path = cli.context.as_ref().ok_or_else(|| Error::validation("context", "--context is required for this command"))?;
    load(path)
}

fn strs<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

fn pick_residue(lc: &LoadedContext, given: Option<i64>) -> Result<Residue> {
    match given {
        Some(r) => Ok(lc.params.reduce(r)),
        None => {
            lc.gamma.as_ref().and_then(|g| g.single_residue()).ok_or_else(|| Error::validation("residue", "pass --residue or give a single-residue multiset"))
        }
    }
}

fn tableau_row(t: &Tableau, fixed: &dyn Fn(&cherednik::Node) -> bool) -> String {
    let moved: Vec<String> = t.assignment().iter().filter(|(a, b)| !(fixed(a) && a == b)).map(|(a, b)| format!("{a}->{b}")).collect();
    moved.join(" ")
}

fn run(cli: &Cli) -> Result<String> {
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Latex => Format::Latex,
        FormatArg::Text => Format::Text,
    };
    let out = match &cli.command {
        Command::Validate => {
            let lc = context(cli)?;
            let p = &lc.params;
            let mut j = json!({
                "valid": true,
                "e": p.e().to_string(),
                "level": p.level(),
                "flotw": p.is_flotw(),
            });
            let mut rows = vec![vec!["e".to_string(), p.e().to_string()], vec!["level".into(), p.level().to_string()]];
            if let Some(gc) = &lc.gamma {
                j["gamma"] = json!(gc.gamma().to_string());
                j["gamma_size"] = json!(gc.gamma().size());
                j["addable"] = json!(strs(gc.addable()));
                j["gamma_set_size"] = json!(gc.len());
                j["well_separated"] = json!(p.is_well_separated(gc.gamma().size() + gc.m()));
                rows.push(vec!["gamma".into(), gc.gamma().to_string()]);
                rows.push(vec!["gamma_set_size".into(), gc.len().to_string()]);
            }
            Output::new(j, &["field", "value"], rows)
        }
        Command::GammaSet => {
            let lc = context(cli)?;
            let gc = lc.gamma_context()?;
            let role = |m: &Multipartition| match (m == gc.plus(), m == gc.minus()) {
                (true, true) => "plus,minus",
                (true, false) => "plus",
                (false, true) => "minus",
                _ => "",
            };
            let rows: Vec<Vec<String>> = gc
                .elements()
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let added: Vec<String> = strs(gc.added_indices(i).iter().map(|a| a + 1));
                    vec![i.to_string(), m.to_string(), added.join(" "), role(m).to_string()]
                })
                .collect();
            let edges = gc.hasse_edges();
            let j = json!({
                "size": gc.len(),
                "plus": gc.plus().to_string(),
                "minus": gc.minus().to_string(),
                "addable": strs(gc.addable()),
                "elements": strs(gc.elements()),
                "hasse": edges,
            });
            let text = {
                let mut s = format!("|Γ| = {}\nγ⁺ = {}\nγ⁻ = {}\n", gc.len(), gc.plus(), gc.minus());
                for r in &rows {
                    s.push_str(format!("{:>4}  {}  [{}] {}", r[0], r[1], r[2], r[3]).trim_end());
                    s.push('\n');
                }
                for (a, b) in &edges {
                    s.push_str(&format!("{a} > {b}\n"));
                }
                s
            };
            Output::new(j, &["index", "multipartition", "added", "role"], rows).with_text(text)
        }
        Command::Tableaux { lambda, mu, general } => {
            let lc = context(cli)?;
            let mode = if *general { Mode::General } else { Mode::GammaRestricted(lc.gamma_context()?) };
            let ts = enumerate_sstd(lambda, mu, &lc.params, mode)?;
            let gamma = lc.gamma.as_ref().map(|g| g.gamma().clone());
            let fixed = |n: &cherednik::Node| gamma.as_ref().is_some_and(|g| g.contains(n));
            let rows: Vec<Vec<String>> = ts.iter().enumerate().map(|(i, t)| vec![i.to_string(), t.degree().to_string(), tableau_row(t, &fixed)]).collect();
            let j = json!({ "shape": lambda.to_string(), "weight": mu.to_string(), "count": ts.len(), "tableaux": ts });
            Output::new(j, &["index", "degree", "assignment"], rows)
        }
        Command::DeltaChar { lambda, mu, general } => {
            let lc = context(cli)?;
            let mode = if *general { Mode::General } else { Mode::GammaRestricted(lc.gamma_context()?) };
            let ch = delta_character(lambda, mu, &lc.params, mode)?;
            let j = json!({ "shape": lambda.to_string(), "weight": mu.to_string(), "value": ch.value.to_string() });
            Output::new(j, &["shape", "weight", "value"], vec![vec![lambda.to_string(), mu.to_string(), ch.value.to_string()]])
                .with_latex(format!("{}\n", ch.value.to_latex()))
                .with_text(format!("{}\n", ch.value))
        }
        Command::Decomp { engine, pair, matrix } => {
            let lc = context(cli)?;
            let gc = lc.gamma_context()?;
            let engine = match engine {
                EngineArg::Nested => Engine::Nested,
                EngineArg::Kn => Engine::Kn,
                EngineArg::Both => Engine::Both,
            };
            match pair {
                Some(p) if !matrix => {
                    let r = decomp_number(&p[0], &p[1], gc, engine)?;
                    let j = json!({
                        "lambda": r.lambda.to_string(),
                        "mu": r.mu.to_string(),
                        "value": r.value.to_string(),
                        "nested": r.nested.as_ref().map(|v| v.to_string()),
                        "kn": r.kn.as_ref().map(|v| v.to_string()),
                        "agree": r.nested.is_some() && r.kn.is_some(),
                        "field_independent": r.field_independent,
                    });
                    Output::new(j, &["lambda", "mu", "value"], vec![vec![r.lambda.to_string(), r.mu.to_string(), r.value.to_string()]])
                        .with_latex(format!("{}\n", r.value.to_latex()))
                        .with_text(format!("{}\n", r.value))
                }
                _ => decomp_matrix(gc, engine)?,
            }
        }
        Command::Terrain { mu, decorate: deco, residue, render } => {
            let lc = context(cli)?;
            let i = pick_residue(&lc, *residue)?;
            let terrain = terrain_of(mu, i, &lc.params)?;
            let dt = deco.as_ref().map(|l| decorate(mu, l, i, &lc.params)).transpose()?;
            match render {
                Some(RenderArg::Ascii) => return Ok(render_ascii(&terrain, dt.as_ref())),
                Some(RenderArg::Svg) => return Ok(render_svg(&terrain, dt.as_ref())),
                None => {}
            }
            let paren = dt.as_ref().map(|d| d.parenthesis_string());
            let rows: Vec<Vec<String>> = terrain
                .steps
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let mark = paren.as_ref().map(|p| p.chars().nth(j).unwrap().to_string()).unwrap_or_default();
                    vec![(j + 1).to_string(), format!("{:?}", s.kind).to_lowercase(), s.node.to_string(), s.coord.to_string(), mark]
                })
                .collect();
            let mut j = json!({ "residue": i.0, "steps": terrain.steps });
            if let Some(d) = &dt {
                let families = well_nested_families(d)?;
                j["decoration"] = json!(d.parenthesis_string());
                j["pairs"] = json!(d.pairs.iter().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>());
                j["families"] = json!(families.len());
                j["polynomial"] = json!(cherednik::terrain::family_polynomial(d)?.to_string());
            }
            Output::new(j, &["edge", "kind", "node", "coord", "decoration"], rows).with_text(render_ascii(&terrain, dt.as_ref()))
        }
        Command::Chi { residue, compare, depth } => {
            let lc = context(cli)?;
            let i = pick_residue(&lc, *residue)?;
            let gamma = lc.gamma_context().map(|g| g.gamma().clone())?;
            let diags = i_diagonals(&gamma, i, &lc.params)?;
            let chi = chi_sequence(&gamma, i, &lc.params)?;
            let rows: Vec<Vec<String>> = diags
                .iter()
                .map(|d| vec![d.x.to_string(), d.comp.to_string(), d.offset.to_string(), d.symbol().to_string(), format!("{:?}", d.bricks)])
                .collect();
            let mut j = json!({ "residue": i.0, "chi": chi, "diagonals": diags });
            let mut text = format!("χ = ({chi})\n");
            if let Some(other) = compare {
                let oc = load(other)?;
                let oi = pick_residue(&oc, None)?;
                let og = oc.gamma_context()?.gamma().clone();
                let ochi = chi_sequence(&og, oi, &oc.params)?;
                j["other"] = json!(ochi);
                text.push_str(&format!("χ̄ = ({ochi})\n"));
                match chi_equivalent(&chi, &ochi, *depth) {
                    ChiEquivalence::Equivalent(trace) => {
                        j["result"] = json!("equivalent");
                        j["trace"] = json!(trace);
                        text.push_str("equivalent\n");
                        for st in &trace {
                            text.push_str(&format!("{} at {}: ({})\n", st.rule, st.position + 1, st.result));
                        }
                    }
                    ChiEquivalence::Inequivalent { left, right } => {
                        j["result"] = json!("inequivalent");
                        j["invariants"] = json!([left, right]);
                        text.push_str("inequivalent\n");
                    }
                    ChiEquivalence::Unknown => {
                        j["result"] = json!("unknown");
                        text.push_str(&format!("unknown within depth {depth}\n"));
                    }
                }
            }
            Output::new(j, &["x", "component", "offset", "symbol", "bricks"], rows).with_text(text)
        }
        Command::Transport { target, pair } => {
            let lc = context(cli)?;
            let tc = load(target)?;
            let tm = TransportMap::new(lc.gamma_context()?, tc.gamma_context()?)?;
            let src = tm.source();
            let mut rows = Vec::new();
            let mut map = Vec::new();
            for l in src.elements() {
                let image = tm.transport_multipartition(l)?;
                let sigma = strs(sigma_k(l, src)?);
                rows.push(vec![l.to_string(), image.to_string(), sigma.join(" ")]);
                map.push(json!({ "from": l.to_string(), "to": image.to_string(), "sigma": sigma_k(l, src)? }));
            }
            let mut j = json!({ "size": src.len(), "map": map });
            if let Some(p) = pair {
                let ts = enumerate_sstd(&p[0], &p[1], &lc.params, Mode::GammaRestricted(src))?;
                let images = ts.iter().map(|t| tm.transport_tableau(t)).collect::<Result<Vec<_>>>()?;
                j["tableaux"] =
                    json!(ts.iter().zip(&images).map(|(a, b)| json!({ "degree": a.degree(), "image_degree": b.degree(), "image": b })).collect::<Vec<_>>());
            }
            Output::new(j, &["lambda", "image", "sigma"], rows)
        }
        Command::TensorFactor { verify } => {
            let lc = context(cli)?;
            let fc = FactoredContext::new(lc.gamma_context()?)?;
            let factors: Vec<Value> = fc.children().iter().map(|(r, c)| json!({ "residue": r.0, "size": c.len(), "elements": strs(c.elements()) })).collect();
            let mut rows = Vec::new();
            for l in fc.parent().elements() {
                rows.push(std::iter::once(l.to_string()).chain(strs(fc.psi_multipartition(l)?)).collect());
            }
            let mut j = json!({ "size": fc.parent().len(), "factors": factors });
            let mut headers = vec!["lambda".to_string()];
            headers.extend(fc.children().iter().map(|(r, _)| format!("psi_{}", r.0)));
            if *verify {
                let report = factor_check(&fc)?;
                j["report"] = json!(report);
                if let Some(c) = &report.counterexample {
                    emit(cli, &Output::new(j, &[], vec![]).render(format)?)?;
                    return Err(Error::InvariantViolation(c.clone()));
                }
            }
            let mut o = Output::new(j, &[], rows);
            o.headers = headers;
            o
        }
        Command::Crosscheck { samples } => {
            let config = CrosscheckConfig { samples: *samples, seed: cli.seed, ..CrosscheckConfig::default() };
            let report = crosscheck(&config)?;
            let rows = report.disagreements.iter().map(|d| vec![d.context.clone(), d.lambda.clone(), d.mu.clone(), d.nested.clone(), d.kn.clone()]).collect();
            let j = json!(report);
            let text = format!(
                "{} contexts ({} well-separated, {} FLOTW), {} entries, {} disagreements\n",
                report.contexts,
                report.well_separated,
                report.flotw,
                report.entries,
                report.disagreements.len()
            );
            if let Some(d) = report.disagreements.first() {
                emit(cli, &Output::new(j, &["context", "lambda", "mu", "nested", "kn"], rows).with_text(text).render(format)?)?;
                return Err(Error::EngineDisagreement {
                    pair: format!("({}, {}) in {}", d.lambda, d.mu, d.context),
                    nested: d.nested.clone(),
                    kn: d.kn.clone(),
                });
            }
            Output::new(j, &["context", "lambda", "mu", "nested", "kn"], rows).with_text(text)
        }
    };
    out.render(format)
}

fn decomp_matrix(gc: &cherednik::GammaContext, engine: Engine) -> Result<Output> {
    let labels = gc.elements();
    let n = labels.len();
    let kn = match engine {
        Engine::Kn | Engine::Both => Some(kn_matrix_for_gamma(gc)?),
        Engine::Nested => None,
    };
    let mut d = vec![vec![cherednik::LaurentPoly::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            d[a][b] = match (&kn, engine) {
                (Some(m), Engine::Kn) => m.d[a][b].clone(),
                _ => {
                    let (v, _) = nested_entry(&labels[a], &labels[b], gc)?;
                    if let Some(m) = &kn {
                        if m.d[a][b] != v {
                            return Err(Error::EngineDisagreement {
                                pair: format!("({}, {})", labels[a], labels[b]),
                                nested: v.to_string(),
                                kn: m.d[a][b].to_string(),
                            });
                        }
                    }
                    v
                }
            };
        }
    }
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !d[a][b].is_zero() {
                rows.push(vec![labels[a].to_string(), labels[b].to_string(), d[a][b].to_string()]);
            }
        }
    }
    let mut latex = format!("\\begin{{array}}{{{}}}\n", "c".repeat(n));
    for row in &d {
        let cells: Vec<String> = row.iter().map(|p| if p.is_zero() { ".".into() } else { p.to_latex() }).collect();
        latex.push_str(&format!("{} \\\\\n", cells.join(" & ")));
    }
    latex.push_str("\\end{array}\n");
    let cells: Vec<Vec<String>> = d.iter().map(strs).collect();
    let j = json!({ "labels": strs(labels), "matrix": cells });
    Ok(Output::new(j, &["lambda", "mu", "d"], rows).with_latex(latex))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn diagnostic(e: &Error) -> String {
    let mut j = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
    if let Error::Validation { field, .. } = e {
        j["field"] = json!(field);
    }
    j.to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json!({ "error": "IoError", "message": e.to_string() }));
            return ExitCode::from(2);
        }
    }
    match run(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
