//! Batch command-line front end. `run` never touches stdout itself; the binary
//! prints the returned report, so output is a pure function of the arguments.

use crate::algebra::fmt_mono;
use crate::error::{Error, Result};
use crate::graph_core::{connected_graphs, family_name, isomorphism_classes, moebius, parse_graph, Graph};
use crate::grobner::{buchberger, buchberger_on, koszul_dual, pbw_check, presented_dimension, Presentation};
use crate::homology::{bar_complex, homology, koszul_euler};
use crate::orders::{MonomialOrder, OrderKind};
use crate::orlik_solomon::{is_signed_identity, nbc_basis, os_hilbert, pairing_matrix, EdgeOrder};
use crate::presets::{default_order, preset, rooted_spanning_trees};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::cell::RefCell;
use std::collections::HashMap;

/// Environment variable holding the default completion bound `V,W`.
pub const BOUND_ENV: &str = "CONTRACTAD_BOUND";

#[derive(Parser, Debug)]
#[command(
    name = "contractad",
    version,
    about = "Exact computer algebra for contractads",
    after_help = "Graphs: P<n>, C<n>, K<n>, St<n> (center is vertex 1), K(1^a,b,...), or edges:1-2,2-3,...\n\
                  Presets: gcCom, gcLie, gcAss-nu, gcAss-mb, gcGerst, En (with --n), RST, RST-dual"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct PresetArgs {
    #[arg(long)]
    pub preset: String,
    /// Parameter of `En`.
    #[arg(long)]
    pub n: Option<usize>,
    /// graphpermlex, rev-graphpermlex or quantum; defaults to the preset's order.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Connected graphs on n vertices, up to isomorphism or sampled.
    Graphs {
        #[arg(long)]
        n: usize,
        /// Every labeling instead of one per class.
        #[arg(long)]
        labeled: bool,
        /// Sample this many labeled graphs using --seed.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Dimension of a component of a presented contractad.
    Dims {
        #[command(flatten)]
        p: PresetArgs,
        #[arg(long)]
        graph: String,
        /// Weight; defaults to n - 1.
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Truncated Groebner basis.
    Gb {
        #[command(flatten)]
        p: PresetArgs,
        /// Completion bound `V,W`; otherwise $CONTRACTAD_BOUND or 4,3.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Normal monomials in one component.
    NormalMonomials {
        #[command(flatten)]
        p: PresetArgs,
        #[arg(long)]
        graph: String,
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Weight-3 criterion on the 38 ordered 4-vertex graphs.
    PbwCheck {
        #[command(flatten)]
        p: PresetArgs,
    },
    /// Bar complex dimensions and homology ranks.
    BarHomology {
        #[command(flatten)]
        p: PresetArgs,
        #[arg(long)]
        graph: String,
    },
    /// Euler characteristic of the Koszul complex of a preset at one graph.
    KoszulEuler {
        /// Preset whose Koszul complex is measured.
        #[arg(long)]
        dual: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        graph: String,
        /// Where primal dimensions come from; `model` is available for RST only.
        #[arg(long, value_enum)]
        primal: Option<PrimalDims>,
    },
    /// Orlik-Solomon algebra of a graphic arrangement.
    Os {
        #[arg(value_enum)]
        action: OsAction,
        #[arg(long)]
        graph: String,
        #[arg(long)]
        degree: Option<usize>,
        /// Explicit edge order, e.g. 1-2,2-3,1-3; defaults to lex.
        #[arg(long)]
        edge_order: Option<String>,
    },
    /// Pairing of the trees T(S) against nbc monomials.
    Pairing {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        edge_order: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrimalDims {
    Presented,
    Model,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OsAction {
    Hilbert,
    Nbc,
    Pairing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Pass,
    Fail,
}

/// A finished computation, renderable in any output format.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub certificates: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<String>,
    pub status: Status,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Report {
        Report {
            command: command.into(),
            inputs,
            results: Value::Null,
            certificates: Value::Null,
            columns: vec![],
            rows: vec![],
            summary: vec![],
            status: Status::Ok,
        }
    }

    fn table(&mut self, columns: &[&str], rows: Vec<Vec<String>>) {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = rows;
    }

    fn status_word(&self) -> Option<&'static str> {
        match self.status {
            Status::Ok => None,
            Status::Pass => Some("PASS"),
            Status::Fail => Some("FAIL"),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut v = json!({
                    "schema": "1",
                    "command": self.command,
                    "inputs": self.inputs,
                    "results": self.results,
                    "certificates": self.certificates,
                });
                if let Some(s) = self.status_word() {
                    v["status"] = json!(s);
                }
                let mut s = serde_json::to_string_pretty(&v).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                s.push_str(&self.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
                s
            }
            Format::Table => {
                let mut s = String::new();
                if !self.columns.is_empty() {
                    let mut w: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
                    for r in &self.rows {
                        for (i, c) in r.iter().enumerate() {
                            w[i] = w[i].max(c.chars().count());
                        }
                    }
                    let line = |cells: &[String]| {
                        let parts: Vec<String> = cells
                            .iter()
                            .enumerate()
                            .map(|(i, c)| format!("{c}{}", " ".repeat(w[i] - c.chars().count())))
                            .collect();
                        format!("{}\n", parts.join("  ").trim_end())
                    };
                    s.push_str(&line(&self.columns));
                    for r in &self.rows {
                        s.push_str(&line(r));
                    }
                }
                for l in &self.summary {
                    s.push_str(l);
                    s.push('\n');
                }
                if let Some(w) = self.status_word() {
                    s.push_str(w);
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Result of one invocation: exit code and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
/// Exit codes: 0 success or PASS, 1 FAIL, 2 usage or precondition error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli) {
        Ok(r) => Outcome {
            code: if r.status == Status::Fail { 1 } else { 0 },
            stdout: r.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load_preset(a: &PresetArgs) -> Result<(Presentation, MonomialOrder)> {
    let p = preset(&a.preset, a.n)?;
    let o = match &a.order {
        None => default_order(&p),
        Some(s) => {
            let kind: OrderKind = s.parse()?;
            if kind == OrderKind::Quantum {
                if p.generators.len() != 2 {
                    return Err(Error::Invalid(format!("the quantum order needs exactly two generators; {} has {}", p.name, p.generators.len())));
                }
                MonomialOrder::quantum()
            } else {
                MonomialOrder::new(kind, p.generators.len())
            }
        }
    };
    Ok((p, o))
}

fn preset_inputs(a: &PresetArgs, o: &MonomialOrder) -> Value {
    json!({ "preset": a.preset, "n": a.n, "order": o.kind.to_string() })
}

/// `V,W` from the flag, then the environment, then `4,3`.
pub fn parse_bound(flag: Option<&str>) -> Result<(usize, usize)> {
    let env = std::env::var(BOUND_ENV).ok();
    let s = flag.map(str::to_string).or(env).unwrap_or_else(|| "4,3".into());
    let bad = || Error::Invalid(format!("bound must look like V,W; got {s}"));
    let (v, w) = s.split_once(',').ok_or_else(bad)?;
    Ok((v.trim().parse().map_err(|_| bad())?, w.trim().parse().map_err(|_| bad())?))
}

fn edge_order(g: &Graph, spec: Option<&str>) -> Result<EdgeOrder> {
    match spec {
        None => Ok(EdgeOrder::lex(g)),
        Some(s) => {
            let mut es = Vec::new();
            for tok in s.split(',') {
                let bad = || Error::Invalid(format!("edge order entries look like u-v; got {tok}"));
                let (u, v) = tok.trim().split_once('-').ok_or_else(bad)?;
                es.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
            }
            EdgeOrder::from_list(g, &es)
        }
    }
}

fn progress(msg: &str) {
    eprintln!("[contractad] {msg}");
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Graphs { n, labeled, sample } => graphs(*n, *labeled, *sample, cli.seed),
        Command::Dims { p, graph, weight } => dims(p, graph, *weight),
        Command::Gb { p, bound } => gb(p, bound.as_deref()),
        Command::NormalMonomials { p, graph, weight } => normal_monomials(p, graph, *weight),
        Command::PbwCheck { p } => pbw(p),
        Command::BarHomology { p, graph } => bar(p, graph),
        Command::KoszulEuler { dual, n, graph, primal } => euler(dual, *n, graph, *primal),
        Command::Os { action, graph, degree, edge_order } => os(*action, graph, *degree, edge_order.as_deref()),
        Command::Pairing { graph, edge_order } => pairing(graph, edge_order.as_deref(), "pairing"),
    }
}

fn graphs(n: usize, labeled: bool, sample: Option<usize>, seed: u64) -> Result<Report> {
    if !(1..=6).contains(&n) {
        return Err(Error::Bound("graph listing is limited to 1..=6 vertices".into()));
    }
    let mut r = Report::new("graphs", json!({ "n": n, "labeled": labeled, "sample": sample, "seed": seed }));
    let list: Vec<(Graph, usize)> = match sample {
        Some(k) => {
            let mut all = connected_graphs(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            all.shuffle(&mut rng);
            all.into_iter().take(k).map(|g| (g, 1)).collect()
        }
        None if labeled => connected_graphs(n).into_iter().map(|g| (g, 1)).collect(),
        None => isomorphism_classes(n),
    };
    let mut rows = Vec::new();
    let mut res = Vec::new();
    for (g, count) in &list {
        let mu = moebius(g)?;
        rows.push(vec![g.to_string(), family_name(g), count.to_string(), g.edge_count().to_string(), mu.to_string()]);
        res.push(json!({ "graph": g.to_string(), "family": family_name(g), "labelings": count, "edges": g.edge_count(), "moebius": mu }));
    }
    r.table(&["graph", "family", "labelings", "edges", "moebius"], rows);
    r.summary.push(format!("{} graphs", list.len()));
    r.results = json!(res);
    Ok(r)
}

fn dims(a: &PresetArgs, spec: &str, weight: Option<usize>) -> Result<Report> {
    let (p, o) = load_preset(a)?;
    let g = parse_graph(spec)?;
    let w = weight.unwrap_or(g.n().saturating_sub(1));
    let mut inputs = preset_inputs(a, &o);
    inputs["graph"] = json!(g.to_string());
    inputs["weight"] = json!(w);
    let mut r = Report::new("dims", inputs);
    progress(&format!("dimension of {} at {g}, weight {w}", p.name));
    let d = presented_dimension(&p, &g, w)?;
    let gbasis = buchberger_on(&p, &o, &[g.clone()], (g.n(), w.max(1)))?;
    let normal = gbasis.normal_monomials_in(&g, w)?.len();
    r.table(&["graph", "weight", "dimension", "normal"], vec![vec![g.to_string(), w.to_string(), d.to_string(), normal.to_string()]]);
    r.summary.push(d.to_string());
    r.results = json!({ "graph": g.to_string(), "weight": w, "dimension": d, "normal_monomials": normal });
    r.certificates = json!({ "grobner": gbasis.certificate, "normal_equals_dimension": normal == d });
    Ok(r)
}

fn gb(a: &PresetArgs, bound: Option<&str>) -> Result<Report> {
    let (p, o) = load_preset(a)?;
    let b = parse_bound(bound)?;
    let mut inputs = preset_inputs(a, &o);
    inputs["bound"] = json!([b.0, b.1]);
    let mut r = Report::new("gb", inputs);
    progress(&format!("completing {} under {} up to {} vertices, weight {}", p.name, o.kind, b.0, b.1));
    let basis = buchberger(&p, &o, b)?;
    let j = basis.to_json();
    let rows = j["elements"]
        .as_array()
        .map(|es| {
            es.iter()
                .map(|e| {
                    ["graph", "leading", "element"].iter().map(|k| e[k].as_str().unwrap_or("").to_string()).collect()
                })
                .collect()
        })
        .unwrap_or_default();
    r.table(&["graph", "leading", "element"], rows);
    r.summary.push(format!("{} elements, max weight {}", basis.len(), basis.max_weight()));
    r.results = j["elements"].clone();
    r.certificates = json!({ "grobner": basis.certificate });
    Ok(r)
}

fn normal_monomials(a: &PresetArgs, spec: &str, weight: Option<usize>) -> Result<Report> {
    let (p, o) = load_preset(a)?;
    let g = parse_graph(spec)?;
    let w = weight.unwrap_or(g.n().saturating_sub(1));
    let mut inputs = preset_inputs(a, &o);
    inputs["graph"] = json!(g.to_string());
    inputs["weight"] = json!(w);
    let mut r = Report::new("normal-monomials", inputs);
    let basis = buchberger_on(&p, &o, &[g.clone()], (g.n(), w.max(1)))?;
    let ms = basis.normal_monomials_in(&g, w)?;
    let mut by_degree: std::collections::BTreeMap<i32, usize> = Default::default();
    let mut rows = Vec::new();
    let mut res = Vec::new();
    for m in &ms {
        let d = m.degree(&p.generators);
        *by_degree.entry(d).or_default() += 1;
        let s = fmt_mono(m, &p.generators);
        rows.push(vec![s.clone(), d.to_string()]);
        res.push(json!({ "monomial": s, "degree": d }));
    }
    r.table(&["monomial", "degree"], rows);
    r.summary.push(format!("{} normal monomials", ms.len()));
    let counts: Vec<Value> = by_degree.iter().map(|(d, c)| json!({ "degree": d, "count": c })).collect();
    r.results = json!({ "monomials": res, "count": ms.len(), "by_degree": counts });
    r.certificates = json!({ "grobner": basis.certificate });
    Ok(r)
}

fn pbw(a: &PresetArgs) -> Result<Report> {
    let (p, o) = load_preset(a)?;
    let mut r = Report::new("pbw-check", preset_inputs(a, &o));
    progress(&format!("weight-3 criterion for {} under {}", p.name, o.kind));
    let rep = pbw_check(&p, &o)?;
    let rows = rep
        .rows
        .iter()
        .map(|x| {
            let ok = if x.normal == x.dimension { "ok" } else { "mismatch" };
            vec![x.graph.clone(), x.family.clone(), x.normal.to_string(), x.dimension.to_string(), ok.into()]
        })
        .collect();
    r.table(&["graph", "family", "normal", "dimension", "check"], rows);
    let bad = rep.rows.iter().filter(|x| x.normal != x.dimension).count();
    r.summary.push(format!("{} components, {} mismatches", rep.rows.len(), bad));
    r.status = if rep.pass { Status::Pass } else { Status::Fail };
    r.results = json!(rep.rows);
    r.certificates = json!({ "components": rep.rows.len(), "pass": rep.pass });
    Ok(r)
}

fn bar(a: &PresetArgs, spec: &str) -> Result<Report> {
    let (p, o) = load_preset(a)?;
    let g = parse_graph(spec)?;
    let mut inputs = preset_inputs(a, &o);
    inputs["graph"] = json!(g.to_string());
    let mut r = Report::new("bar-homology", inputs);
    progress(&format!("bar complex of {} at {g}", p.name));
    let basis = buchberger_on(&p, &o, &[g.clone()], (g.n(), g.n().saturating_sub(1).max(1)))?;
    let c = bar_complex(&basis, &g)?;
    let h = homology(&c)?;
    let rows = (0..h.dims.len()).map(|s| vec![s.to_string(), h.dims[s].to_string(), h.ranks[s].to_string()]).collect();
    r.table(&["degree", "dim", "homology"], rows);
    r.summary.push(format!("euler characteristic {}", h.euler));
    r.results = json!(h);
    r.certificates = json!({ "d_squared_zero": true, "grobner": basis.certificate });
    Ok(r)
}

type DimCache = RefCell<HashMap<Graph, i64>>;

fn cached(cache: &DimCache, g: &Graph, f: &dyn Fn(&Graph) -> Result<i64>, err: &RefCell<Option<Error>>) -> Option<i64> {
    if let Some(&d) = cache.borrow().get(g) {
        return Some(d);
    }
    match f(g) {
        Ok(d) => {
            cache.borrow_mut().insert(g.clone(), d);
            Some(d)
        }
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            None
        }
    }
}

fn euler(name: &str, n: Option<usize>, spec: &str, primal: Option<PrimalDims>) -> Result<Report> {
    let p = preset(name, n)?;
    let g = parse_graph(spec)?;
    let mode = primal.unwrap_or(if p.name == "RST" { PrimalDims::Model } else { PrimalDims::Presented });
    if mode == PrimalDims::Model && p.name != "RST" {
        return Err(Error::Unsupported(format!("no model dimensions for {}", p.name)));
    }
    let mut r = Report::new(
        "koszul-euler",
        json!({ "dual": name, "n": n, "graph": g.to_string(), "primal": format!("{mode:?}").to_lowercase() }),
    );
    progress(&format!("Koszul dual of {}", p.name));
    let q = koszul_dual(&p)?;
    let err = RefCell::new(None);
    let (qc, pc): (DimCache, DimCache) = Default::default();
    let qdim = |h: &Graph| presented_dimension(&q, h, h.n() - 1).map(|d| d as i64);
    let pdim = |h: &Graph| match mode {
        PrimalDims::Model => rooted_spanning_trees(h).map(|v| v.len() as i64),
        PrimalDims::Presented => presented_dimension(&p, h, h.n() - 1).map(|d| d as i64),
    };
    let chi = koszul_euler(&|h| cached(&qc, h, &qdim, &err), &|h| cached(&pc, h, &pdim, &err), &g);
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let chi = chi?;
    let dual_dim = qdim(&g)?;
    r.table(&["graph", "euler", "dual_dimension"], vec![vec![g.to_string(), chi.to_string(), dual_dim.to_string()]]);
    r.summary.push(chi.to_string());
    let acyclic = g.n() == 1 || chi == 0;
    r.status = if acyclic { Status::Pass } else { Status::Fail };
    if !acyclic {
        r.summary.push("acyclicity fails".into());
    }
    r.results = json!({ "euler": chi, "dual_dimension": dual_dim });
    r.certificates = json!({ "acyclic_euler": acyclic });
    Ok(r)
}

fn os(action: OsAction, spec: &str, degree: Option<usize>, order: Option<&str>) -> Result<Report> {
    let g = parse_graph(spec)?;
    match action {
        OsAction::Hilbert => {
            let mut r = Report::new("os", json!({ "action": "hilbert", "graph": g.to_string() }));
            let h = os_hilbert(&g);
            r.table(&["degree", "dimension"], h.iter().enumerate().map(|(k, d)| vec![k.to_string(), d.to_string()]).collect());
            r.results = json!(h);
            Ok(r)
        }
        OsAction::Nbc => {
            let o = edge_order(&g, order)?;
            let k = degree.ok_or_else(|| Error::Invalid("os nbc needs --degree".into()))?;
            let mut r = Report::new(
                "os",
                json!({ "action": "nbc", "graph": g.to_string(), "degree": k, "edge_order": o.edges }),
            );
            let sets = nbc_basis(&g, &o, k);
            let fmt = |s: &Vec<usize>| s.iter().map(|&i| format!("{}{}", o.edges[i].0, o.edges[i].1)).collect::<Vec<_>>().join(" ");
            r.table(&["nbc"], sets.iter().map(|s| vec![fmt(s)]).collect());
            r.summary.push(format!("{} sets", sets.len()));
            let named: Vec<Vec<(usize, usize)>> = sets.iter().map(|s| s.iter().map(|&i| o.edges[i]).collect()).collect();
            r.results = json!(named);
            Ok(r)
        }
        OsAction::Pairing => pairing(spec, order, "os"),
    }
}

fn pairing(spec: &str, order: Option<&str>, command: &str) -> Result<Report> {
    let g = parse_graph(spec)?;
    let o = edge_order(&g, order)?;
    let mut r = Report::new(command, json!({ "action": "pairing", "graph": g.to_string(), "edge_order": o.edges }));
    let (sets, m) = pairing_matrix(&g, &o)?;
    let ok = is_signed_identity(&m);
    let fmt = |s: &Vec<usize>| {
        if s.is_empty() {
            return "{}".to_string();
        }
        s.iter().map(|&i| format!("{}{}", o.edges[i].0, o.edges[i].1)).collect::<Vec<_>>().join(" ")
    };
    let rows = sets.iter().enumerate().map(|(i, s)| vec![fmt(s), m[i][i].to_string()]).collect();
    r.table(&["nbc", "sign"], rows);
    r.summary.push(format!("{} nbc sets", sets.len()));
    r.status = if ok { Status::Pass } else { Status::Fail };
    r.results = json!({ "sets": sets.len(), "diagonal": (0..sets.len()).map(|i| m[i][i]).collect::<Vec<_>>() });
    r.certificates = json!({ "signed_identity": ok });
    Ok(r)
}
