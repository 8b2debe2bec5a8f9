mod args;

use std::fmt::{self, Display, Write as _};
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};
use spinlocus::graph::GraphParseError;
use spinlocus::numerics::{
    boundary_divisor_count, class_group_rank, coarse_moduli_predicate, kouvidakis_class,
    normalize_degree, PicardParams,
};
use spinlocus::quasistable::{spin_parity, unblown_valences, QuasistableGraph, RawBlowups};
use spinlocus::spin_locus::{
    decide_spin_component, enumerate_spin_multidegrees, split_curve_table, SpinWitness,
};
use spinlocus::{DualGraph, Multidegree, Rational, Twist};

use args::{BiArgs, Cli, Command, InfoArgs, NumericsArgs, Scalar, SpinArgs};

#[derive(Debug)]
enum CliError {
    Message(String),
    Core(spinlocus::Error),
}

impl Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Message(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<spinlocus::Error> for CliError {
    fn from(e: spinlocus::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced: a table for people and a payload for machines.
struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("error: cannot start worker threads: {e}");
        return ExitCode::FAILURE;
    }
    let outcome = match &cli.command {
        Command::Info(a) => cmd_info(a),
        Command::Bi(a) => cmd_bi(a, cli.max_vertices),
        Command::Spin(a) => cmd_spin(a, cli.max_vertices),
        Command::Numerics(a) => cmd_numerics(a),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                let envelope = json!({
                    "command": report.command,
                    "inputs": report.inputs,
                    "result": report.result,
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn load_graph(path: &Path) -> CliResult<DualGraph> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Message(format!("cannot read {}: {e}", path.display())))?;
    DualGraph::from_json(&text).map_err(|e| match e {
        GraphParseError::Json(e) => CliError::Message(format!("{}: invalid graph file: {e}", path.display())),
        GraphParseError::Invalid(e) => CliError::Message(format!("{}: {e}", path.display())),
    })
}

fn guard(graph: &DualGraph, limit: usize) -> CliResult<()> {
    if graph.len() > limit {
        return Err(CliError::Message(format!(
            "graph has {} vertices; subset enumeration is capped at --max-vertices {limit}",
            graph.len()
        )));
    }
    Ok(())
}

fn twist(a: &SpinArgs) -> CliResult<Twist> {
    if a.unsafe_t {
        if a.t < Twist::MIN {
            eprintln!("warning: t = {} is below {}; results are exploratory", a.t, Twist::MIN);
        }
        Ok(Twist::exploratory(a.t)?)
    } else {
        Twist::new(a.t).map_err(|e| CliError::Message(format!("{e} (pass --unsafe-t to override)")))
    }
}

fn ratio(r: Rational) -> String {
    r.to_string()
}

fn ids(graph: &DualGraph) -> Vec<&str> {
    graph.vertices().iter().map(|v| v.id.as_str()).collect()
}

fn graph_inputs(path: &Path, graph: &DualGraph) -> Value {
    json!({ "graph": path.display().to_string(), "vertices": ids(graph) })
}

fn cmd_info(a: &InfoArgs) -> CliResult<Report> {
    let graph = load_graph(&a.graph)?;
    let genus = graph.arithmetic_genus();
    let stable = graph.is_stable();
    let unstable: Vec<&str> = graph
        .unstable_components()
        .into_iter()
        .map(|i| graph.vertex(i).id.as_str())
        .collect();

    let mut text = format!("genus {genus}, {}\n", if stable { "stable" } else { "NOT stable" });
    let _ = writeln!(
        text,
        "{} components, {} nodes between components, {} self-nodes",
        graph.len(),
        graph.edge_count(),
        graph.self_node_count()
    );
    for (i, v) in graph.vertices().iter().enumerate() {
        let _ = writeln!(
            text,
            "  {:<8} pa={:<3} self_nodes={:<3} valence={}",
            v.id,
            v.pa,
            v.self_nodes,
            graph.valence(i)
        );
    }
    if !unstable.is_empty() {
        let _ = writeln!(text, "unstable components: {}", unstable.join(", "));
    }

    let vertices: Vec<Value> = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| json!({"id": v.id, "pa": v.pa, "self_nodes": v.self_nodes, "valence": graph.valence(i)}))
        .collect();
    Ok(Report {
        command: "info",
        inputs: json!({ "graph": a.graph.display().to_string() }),
        result: json!({
            "genus": genus,
            "stable": stable,
            "unstable_components": unstable,
            "vertices": vertices,
            "nodes_between_components": graph.edge_count(),
            "self_nodes": graph.self_node_count(),
        }),
        text,
    })
}

fn cmd_bi(a: &BiArgs, max_vertices: usize) -> CliResult<Report> {
    let graph = load_graph(&a.graph)?;
    guard(&graph, max_vertices)?;
    let mut inputs = graph_inputs(&a.graph, &graph);
    inputs["total"] = json!(a.total);

    match &a.multidegree {
        Some(degrees) => {
            inputs["multidegree"] = json!(degrees);
            let md = Multidegree::new(degrees.clone());
            if md.len() != graph.len() {
                return Err(CliError::Message(format!(
                    "multidegree has {} entries but the graph has {} vertices ({})",
                    md.len(),
                    graph.len(),
                    ids(&graph).join(",")
                )));
            }
            if let Some(total) = a.total.filter(|&d| d != md.total()) {
                return Err(CliError::Message(format!(
                    "multidegree sums to {}, not --total {total}",
                    md.total()
                )));
            }
            let report = graph.basic_inequality(&md)?;
            let mut text = String::new();
            if report.satisfied() {
                let _ = writeln!(text, "{md} satisfies the Basic Inequality");
            } else {
                let _ = writeln!(text, "{md} violates the Basic Inequality on {} subcurve(s)", report.violations.len());
                for v in &report.violations {
                    let _ = writeln!(
                        text,
                        "  Y={}  d_Y={}  m_Y={}  m_Y+k_Y={}",
                        graph.describe(v.subcurve),
                        v.degree,
                        ratio(v.lower),
                        ratio(v.upper)
                    );
                }
            }
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "subcurve": v.subcurve.iter().map(|i| graph.vertex(i).id.clone()).collect::<Vec<_>>(),
                        "d_Y": v.degree,
                        "m_Y": ratio(v.lower),
                        "m_Y_plus_k_Y": ratio(v.upper),
                    })
                })
                .collect();
            Ok(Report {
                command: "bi",
                inputs,
                result: json!({ "satisfied": report.satisfied(), "violations": violations }),
                text,
            })
        }
        None => {
            let total = a.total.expect("clap requires --total without --multidegree");
            let all = graph.enumerate_multidegrees(total)?;
            let mut text = format!("multidegrees of total {total} on ({}):\n", ids(&graph).join(","));
            for md in &all {
                let _ = writeln!(text, "  {md}");
            }
            let _ = writeln!(text, "{} multidegrees", all.len());
            Ok(Report {
                command: "bi",
                inputs,
                result: json!({ "count": all.len(), "multidegrees": all }),
                text,
            })
        }
    }
}

fn cmd_spin(a: &SpinArgs, max_vertices: usize) -> CliResult<Report> {
    let t = twist(a)?;
    if a.split_curve {
        return spin_split_curve(a, t);
    }
    let path = a
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Message("a graph file is required".into()))?;
    let graph = load_graph(path)?;
    let mut inputs = graph_inputs(path, &graph);
    inputs["t"] = json!(t.get());

    if let Some(blowups) = &a.blowups {
        inputs["blowups"] = json!(blowups.display().to_string());
        return spin_blowups(&graph, blowups, t, max_vertices, inputs);
    }
    guard(&graph, max_vertices)?;
    if let Some(degrees) = &a.decide {
        inputs["multidegree"] = json!(degrees);
        return spin_decide(&graph, degrees, t, inputs);
    }
    spin_locus(&graph, t, inputs)
}

fn spin_blowups(
    graph: &DualGraph,
    path: &Path,
    t: Twist,
    max_vertices: usize,
    inputs: Value,
) -> CliResult<Report> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Message(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawBlowups = serde_json::from_str(&text)
        .map_err(|e| CliError::Message(format!("{}: invalid blow-up file: {e}", path.display())))?;
    let cfg = raw
        .resolve(graph)
        .map_err(|e| CliError::Message(format!("{}: {e}", path.display())))?;
    if !spin_parity(graph, &cfg) {
        let odd: Vec<String> = unblown_valences(graph, &cfg)
            .iter()
            .enumerate()
            .filter(|(_, k)| *k % 2 != 0)
            .map(|(i, k)| format!("{} (k~ = {k})", graph.vertex(i).id))
            .collect();
        return Err(CliError::Message(format!(
            "blow-up carries no spin structure: odd k~ at {}",
            odd.join(", ")
        )));
    }
    let q = QuasistableGraph::expand(graph, &cfg)?;
    guard(q.graph(), max_vertices)?;
    let md = q.spin_multidegree(t)?;
    let bi = q.graph().basic_inequality(&md)?;
    let connected = q.git_stable();
    let by_degrees = q.git_stable_by_subcurves(t)?;
    if connected != by_degrees {
        return Err(CliError::Message(
            "stability by connectivity and by subcurve degrees disagree".into(),
        ));
    }
    let closed = q.orbit_closed_check(t)?;

    let x = q.graph();
    let mut text = format!(
        "spin parity: ok\nquasistable curve: {} components ({} exceptional), genus {}\n",
        x.len(),
        x.len() - q.component_count(),
        x.arithmetic_genus()
    );
    let _ = writeln!(text, "multidegree of zeta (x) omega^{} (total {}):", t.get(), md.total());
    for (id, d) in md.labeled(x) {
        let _ = writeln!(text, "  {id:<16} {d}");
    }
    let _ = writeln!(
        text,
        "Basic Inequality: {}",
        if bi.satisfied() { "satisfied" } else { "VIOLATED" }
    );
    let _ = writeln!(text, "GIT stable: {}", if connected { "yes" } else { "no" });
    let _ = writeln!(text, "orbit closed in semistable locus: {}", if closed { "yes" } else { "no" });

    Ok(Report {
        command: "spin",
        inputs,
        result: json!({
            "spin_parity": true,
            "vertices": ids(x),
            "exceptional": (0..x.len()).map(|v| q.is_exceptional(v)).collect::<Vec<_>>(),
            "multidegree": md,
            "basic_inequality": bi.satisfied(),
            "git_stable": connected,
            "orbit_closed": closed,
        }),
        text,
    })
}

fn witness_rows(graph: &DualGraph, w: &SpinWitness) -> Vec<(String, u32, u32, u32)> {
    let n = graph.len();
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| graph.multiplicity(i, j) > 0)
        .map(|(i, j)| {
            (
                format!("{}-{}", graph.vertex(i).id, graph.vertex(j).id),
                w.s[i][j],
                w.sigma[i][j],
                w.sigma[j][i],
            )
        })
        .collect()
}

fn spin_decide(graph: &DualGraph, degrees: &[i64], t: Twist, inputs: Value) -> CliResult<Report> {
    let md = Multidegree::new(degrees.to_vec());
    if md.len() != graph.len() {
        return Err(CliError::Message(format!(
            "multidegree has {} entries but the graph has {} vertices ({})",
            md.len(),
            graph.len(),
            ids(graph).join(",")
        )));
    }
    let expected = t.total_degree(graph.arithmetic_genus());
    if md.total() != expected {
        return Err(CliError::Message(format!(
            "multidegree sums to {}, but (2t+1)(g-1) = {expected}",
            md.total()
        )));
    }
    let witness = decide_spin_component(graph, t, &md)?;
    let mut text = String::new();
    let result = match &witness {
        Some(w) => {
            let _ = writeln!(text, "{md} meets the spin locus; witness:");
            let rows = witness_rows(graph, w);
            for (pair, s, a, b) in &rows {
                let _ = writeln!(text, "  {pair}: s={s} sigma=({a},{b})");
            }
            let pairs: Vec<Value> = rows
                .iter()
                .map(|(pair, s, a, b)| json!({"pair": pair, "s": s, "sigma": [a, b]}))
                .collect();
            json!({ "met": true, "witness": pairs })
        }
        None => {
            let _ = writeln!(text, "{md} is a fiber component not met by the spin locus");
            json!({ "met": false, "witness": null })
        }
    };
    Ok(Report {
        command: "spin",
        inputs,
        result,
        text,
    })
}

fn spin_locus(graph: &DualGraph, t: Twist, inputs: Value) -> CliResult<Report> {
    let spin = enumerate_spin_multidegrees(graph, t);
    let fiber = graph.enumerate_multidegrees(t.total_degree(graph.arithmetic_genus()))?;
    let mut text = format!(
        "fiber components met by the spin locus, t = {} ({}):\n",
        t.get(),
        ids(graph).join(",")
    );
    for md in &spin {
        let _ = writeln!(text, "  {md}");
    }
    let _ = writeln!(text, "{} of {} fiber components", spin.len(), fiber.len());
    Ok(Report {
        command: "spin",
        inputs,
        result: json!({
            "count": spin.len(),
            "fiber_components": fiber.len(),
            "multidegrees": spin.iter().collect::<Vec<_>>(),
        }),
        text,
    })
}

fn spin_split_curve(a: &SpinArgs, t: Twist) -> CliResult<Report> {
    let genus = a
        .genus
        .ok_or_else(|| CliError::Message("--split-curve needs -g".into()))?;
    let rows = split_curve_table(genus, t)?;
    let mut text = format!("split curve of genus {genus}, t = {}\n", t.get());
    let _ = writeln!(text, "{:>4} {:>6} {:>6} {:>6}", "s", "sigma", "d1", "d2");
    for r in &rows {
        let _ = writeln!(text, "{:>4} {:>6} {:>6} {:>6}", r.s, r.sigma, r.d1, r.d2);
    }
    let bidegrees: std::collections::BTreeSet<(i64, i64)> = rows.iter().map(|r| r.bidegree()).collect();
    let _ = writeln!(text, "{} rows, {} distinct bidegrees", rows.len(), bidegrees.len());
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"s": r.s, "sigma": r.sigma, "d1": r.d1, "d2": r.d2}))
        .collect();
    Ok(Report {
        command: "spin",
        inputs: json!({ "split_curve": true, "genus": genus, "t": t.get() }),
        result: json!({ "rows": json_rows, "bidegrees": bidegrees }),
        text,
    })
}

fn cmd_numerics(a: &NumericsArgs) -> CliResult<Report> {
    let need_degree = || {
        a.degree
            .ok_or_else(|| CliError::Message("this quantity needs -d".into()))
    };
    let g = a.genus;
    let (name, value, identity): (&str, Value, String) = match a.scalar {
        Scalar::Kdg => {
            let d = need_degree()?;
            let k = kouvidakis_class(PicardParams::new(g, d)?);
            let c = 2 * g - 2;
            let gcd = c / k;
            (
                "kdg",
                json!(k),
                format!("(2g-2)/gcd(2g-2, g+d-1) = {c}/gcd({c}, {}) = {c}/{gcd}", g + d - 1),
            )
        }
        Scalar::Coarse => {
            let d = need_degree()?;
            let holds = coarse_moduli_predicate(PicardParams::new(g, d)?);
            (
                "coarse",
                json!(holds),
                format!("gcd(d-g+1, 2g-2) = gcd({}, {}) {} 1", d - g + 1, 2 * g - 2, if holds { "=" } else { "!=" }),
            )
        }
        Scalar::Rank => {
            let rank = class_group_rank(g)?;
            let boundary = boundary_divisor_count(g)?;
            (
                "rank",
                json!(rank),
                format!("2 + (floor(g/2) + 1) boundary classes = 2 + {boundary}"),
            )
        }
        Scalar::Normalize => {
            let d = need_degree()?;
            let p = PicardParams::new(g, d)?;
            let n = normalize_degree(p);
            (
                "normalize",
                json!(n),
                format!(
                    "smallest d' >= 20(g-1) = {} with d' = d mod 2g-2 = {}: {n} = {d} + ({})*{}",
                    p.degree_floor(),
                    p.canonical_degree(),
                    (n - d) / p.canonical_degree(),
                    p.canonical_degree()
                ),
            )
        }
    };
    let text = format!("{value}\n  {identity}\n");
    Ok(Report {
        command: "numerics",
        inputs: json!({ "quantity": name, "g": g, "d": a.degree }),
        result: json!({ "value": value, "identity": identity }),
        text,
    })
}

