mod families;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homplex_core::complex::{LabelTuple, ProjectedCell, SimplicialComplex, TupleMode};
use homplex_core::cyclic::{check_phi_psi, composition_complex, composition_graph, compositions, lower_facets};
use homplex_core::dissection::*;
use homplex_core::hom::*;
use homplex_core::homology::reduced_homology;
use homplex_core::linalg::RationalVector;
use homplex_core::verify::{run_suite, Suite, VerifyOptions, VerifySuiteReport};
use homplex_core::Error;

#[derive(Parser)]
#[command(
    name = "homplex",
    version,
    about = "Hom-complexes, dissection complexes and staircase triangulations, computed exactly"
)]
struct Cli {
    /// Maximum number of faces any single enumeration may produce.
    #[arg(long, env = "HOMPLEX_BUDGET", default_value_t = 5_000_000, global = true)]
    budget: usize,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Hom(G, H) or a variant; optionally project or slice it.
    Hom {
        /// Source graph: K<n>, C<n>, E<n>, P<n>, I<k>_<m>, S<r>_<s> or a JSON file.
        #[arg(long = "G", value_name = "GRAPH")]
        g: String,
        /// Target graph, same syntax.
        #[arg(long = "H", value_name = "GRAPH")]
        h: String,
        /// One of hom, hom_plus, hom_plus_t, ihom, ihom_plus.
        #[arg(long, default_value = "hom")]
        mode: String,
        /// Project to R^h by summing vertex choices.
        #[arg(long)]
        project: bool,
        /// Cayley-trick slice coordinates, exact fractions.
        #[arg(long)]
        slice: bool,
        /// A single cell as parts separated by '/', vertices by ',', e.g.
        /// "0,1/0,2/1,2". With --slice only this cell is sliced.
        #[arg(long)]
        cell: Option<String>,
    },
    /// Polygon dissections into k-gons with m cells.
    Dissect {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, value_enum)]
        what: DissectWhat,
        /// Append reduced integral homology.
        #[arg(long)]
        homology: bool,
    },
    /// Lower facets of cyclic polytopes and weak compositions.
    Cyclic {
        #[arg(short)]
        r: Option<usize>,
        #[arg(short)]
        s: Option<usize>,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        d: Option<usize>,
        #[arg(long, value_enum)]
        what: CyclicWhat,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DissectWhat {
    #[value(name = "delta")]
    Delta,
    #[value(name = "T")]
    T,
    #[value(name = "D")]
    D,
    #[value(name = "Dplus")]
    Dplus,
    #[value(name = "Dplus_t")]
    DplusT,
    #[value(name = "flip")]
    Flip,
    #[value(name = "ic")]
    Ic,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CyclicWhat {
    LowerFacets,
    Compositions,
    Graph,
    Complex,
    PhiPsiCheck,
}

/// What went wrong, by exit code.
enum Failure {
    Verification(Value),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let result = match cli.command {
        Command::Hom {
            g,
            h,
            mode,
            project,
            slice,
            cell,
        } => cmd_hom(&g, &h, &mode, project, slice, cell.as_deref(), cli.budget),
        Command::Dissect { k, m, what, homology } => cmd_dissect(k, m, what, homology, cli.budget),
        Command::Cyclic { r, s, n, d, what } => cmd_cyclic(r, s, n, d, what),
        Command::Verify { suite, max_size } => cmd_verify(&suite, max_size, cli.budget),
    };
    match result {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}; raise HOMPLEX_BUDGET or --budget to continue");
            ExitCode::from(3)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
fn emit(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

// ---------------------------------------------------------------------- hom

fn parse_cell(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split('/')
        .map(|part| {
            part.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|e| Failure::Usage(format!("bad cell {text:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

fn fractions(points: &[Vec<i64>], g: usize) -> Vec<Vec<String>> {
    points.iter().map(|x| RationalVector::scaled(x, g as i64).to_strings()).collect()
}

fn slice_json(t: &LabelTuple, h: usize) -> Result<Value, Failure> {
    let g = t.parts.len();
    let vertices = cayley_slice_scaled(t, h)?;
    Ok(json!({"cell": t.parts, "vertices": fractions(&vertices, g)}))
}

fn projected_json(c: &ProjectedCell) -> Value {
    json!({"parts": c.parts, "vertices": c.vertices, "points": c.points})
}

fn cmd_hom(g: &str, h: &str, mode: &str, project: bool, slice: bool, cell: Option<&str>, budget: usize) -> Outcome {
    let gg = families::parse_graph(g)?;
    let hh = families::parse_graph(h)?;
    let mode: HomMode = mode.parse()?;
    let hom = build_hom(&gg, &hh, mode)?;
    let mut out = json!({
        "G": gg.to_json(),
        "H": hh.to_json(),
        "mode": mode,
    });
    if let Some(text) = cell {
        let parts = parse_cell(text)?;
        if parts.len() != gg.n() {
            return Err(Failure::Usage(format!("cell has {} parts, G has {} vertices", parts.len(), gg.n())));
        }
        let tuple_mode = if mode.is_plus() { TupleMode::HomPlus } else { TupleMode::Hom };
        let t = LabelTuple::new(parts, tuple_mode)?;
        if let Some(&v) = t.parts.iter().flatten().find(|&&v| v >= hh.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: hh.n() }.into());
        }
        let in_complex = hom.cells.iter().any(|c| {
            c.parts
                .iter()
                .zip(&t.parts)
                .all(|(big, small)| small.iter().all(|v| big.contains(v)))
        });
        out["cell"] = json!(t.parts);
        out["cell_in_complex"] = json!(in_complex);
        if slice {
            out["slice"] = slice_json(&t, hh.n())?;
        }
        if project {
            out["projection"] = projected_json(&project_pi(&t, hh.n())?);
        }
        return Ok(out);
    }
    out["cells"] = json!(hom.cells.iter().map(|c| &c.parts).collect::<Vec<_>>());
    out["f_vector"] = json!(hom.f_vector(budget)?);
    if slice {
        let transversal: Vec<&LabelTuple> = hom.cells.iter().filter(|c| c.is_transversal()).collect();
        out["slice"] = Value::Array(transversal.into_iter().map(|t| slice_json(t, hh.n())).collect::<Result<_, _>>()?);
    }
    if project {
        if mode.is_plus() {
            let k = projected_simplicial_complex(&gg, &hh, mode)?;
            out["projection"] = json!(k.to_json());
        } else {
            let cells = projected_complex(&gg, &hh, mode)?;
            out["projection"] = Value::Array(cells.iter().map(projected_json).collect());
            let complete = gg.edge_count() == gg.n() * gg.n().saturating_sub(1) / 2;
            if complete && gg.n() > 0 && mode == HomMode::Hom {
                let r = is_projection_polytopal(gg.n(), &hh)?;
                out["polytopal"] = json!({
                    "clique_number": r.clique_number,
                    "criterion": r.criterion,
                    "geometric": r.geometric,
                });
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------ dissect

fn homology_json(k: &SimplicialComplex, budget: usize) -> Result<Value, Failure> {
    Ok(json!(reduced_homology(k, budget)?))
}

fn cmd_dissect(k: usize, m: usize, what: DissectWhat, homology: bool, budget: usize) -> Outcome {
    let p = DissectionParams::new(k, m)?;
    let complex = |k: SimplicialComplex| -> Outcome {
        let mut out = json!({"complex": k.to_json(), "f_vector": k.f_vector(budget)?});
        if homology {
            out["homology"] = homology_json(&k, budget)?;
        }
        Ok(out)
    };
    match what {
        DissectWhat::Delta => {
            let ds = allowable_diagonals(p);
            if homology {
                return Err(Failure::Usage("--homology needs a complex, not the diagonal list".into()));
            }
            Ok(json!(ds))
        }
        DissectWhat::T => complex(build_t(p)?),
        DissectWhat::Dplus => complex(build_d_plus(p)?),
        DissectWhat::DplusT => complex(build_d_plus_t(p)?),
        DissectWhat::Ic => complex(build_ic_delta(p)?),
        DissectWhat::D => {
            let cells = build_d(p)?;
            let (dim_d, dim_d_plus) = dimension_of_d(p)?;
            let mut out = json!({
                "diagonals": allowable_diagonals(p),
                "cells": cells.iter().map(projected_json).collect::<Vec<_>>(),
                "dimension": dim_d,
                "dimension_plus": dim_d_plus,
            });
            if homology {
                // Reported as the homology of D+, with the cellular chain
                // complex of D alongside.
                out["homology"] = homology_json(&build_d_plus(p)?, budget)?;
                out["homology_of"] = json!("Dplus");
                out["cellular_homology"] = json!(d_cell_complex(p, budget)?.reduced_homology()?);
            }
            Ok(out)
        }
        DissectWhat::Flip => {
            let (vertices, graph) = flip_graph(p)?;
            let ds = allowable_diagonals(p);
            let named: Vec<Vec<Diagonal>> = vertices.iter().map(|v| v.iter().map(|&i| ds[i]).collect()).collect();
            let mut out = json!({"dissections": named, "graph": graph.to_json()});
            if homology {
                return Err(Failure::Usage("--homology is not defined for the flip graph".into()));
            }
            out["edges"] = json!(graph.edge_count());
            Ok(out)
        }
    }
}

// ------------------------------------------------------------------- cyclic

/// Resolves `(r, s)` and `(n, d)` from whatever was given, checking
/// `d = 2s - 2` and `n = r + d` when both are present.
fn cyclic_params(r: Option<usize>, s: Option<usize>, n: Option<usize>, d: Option<usize>) -> Result<(usize, usize, usize, usize), Failure> {
    let (r, s) = match (r, s, n, d) {
        (Some(r), Some(s), _, _) => (r, s),
        (None, None, Some(n), Some(d)) => {
            if d % 2 != 0 || d < 2 || n < d {
                return Err(Failure::Usage(format!("need even d >= 2 and n >= d, got n = {n}, d = {d}")));
            }
            (n - d, d / 2 + 1)
        }
        _ => return Err(Failure::Usage("give both -r and -s, or both -n and -d".into())),
    };
    if r == 0 || s == 0 {
        return Err(Failure::Usage("need r, s >= 1".into()));
    }
    let (dd, nn) = (2 * s - 2, r + 2 * s - 2);
    if n.is_some_and(|n| n != nn) || d.is_some_and(|d| d != dd) {
        return Err(Failure::Usage(format!(
            "inconsistent parameters: r = {r}, s = {s} force n = {nn}, d = {dd}"
        )));
    }
    Ok((r, s, nn, dd))
}

fn cmd_cyclic(r: Option<usize>, s: Option<usize>, n: Option<usize>, d: Option<usize>, what: CyclicWhat) -> Outcome {
    let (r, s, n, d) = cyclic_params(r, s, n, d)?;
    match what {
        CyclicWhat::LowerFacets => Ok(json!(lower_facets(n, d))),
        CyclicWhat::Compositions => Ok(json!(compositions(r, s))),
        CyclicWhat::Graph => {
            let (vertices, graph) = composition_graph(r, s);
            Ok(json!({"vertices": vertices, "graph": graph.to_json()}))
        }
        CyclicWhat::Complex => {
            let cells = composition_complex(r, s)?;
            Ok(Value::Array(
                cells
                    .iter()
                    .map(|(path, cell)| json!({"path": path, "parts": cell.parts, "vertices": cell.vertices}))
                    .collect(),
            ))
        }
        CyclicWhat::PhiPsiCheck => {
            let rep = check_phi_psi(r, s)?;
            let passed = rep.passed();
            let mut out = json!(rep);
            out["passed"] = json!(passed);
            if passed {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

// ------------------------------------------------------------------- verify

fn cmd_verify(suite: &str, max_size: Option<usize>, budget: usize) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let opts = VerifyOptions {
        max_size,
        budget,
        ..VerifyOptions::default()
    };
    let mut reports: Vec<VerifySuiteReport> = Vec::new();
    for s in suites {
        let start = Instant::now();
        let rep = run_suite(s, &opts);
        eprintln!(
            "{}: {} passed, {} failed, {} skipped, {} reported in {:.2?}",
            rep.suite,
            rep.passed,
            rep.failed,
            rep.skipped,
            rep.reported,
            start.elapsed()
        );
        reports.push(rep);
    }
    let ok = reports.iter().all(VerifySuiteReport::all_passed);
    let out = if reports.len() == 1 {
        json!(reports[0])
    } else {
        json!({"suites": reports, "passed": ok})
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
