//! Command-line frontend for the `lamplighter` library.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a budget runs out.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use lamplighter::completion::{self, is_pro_p_closed, is_profinitely_closed, n1_pro_p_criterion};
use lamplighter::counting::{self, DEFAULT_SUBMODULE_BUDGET};
use lamplighter::gradient::{self, ChainSpec};
use lamplighter::group::{parse_submodule_inline, triple_from_generators, GroupElement, SubgroupTriple};
use lamplighter::normal_lattice::{self, NormalTriple};
use lamplighter::ring::{is_prime, FpPoly, LaurentPoly};
use lamplighter::rmodule::{smith_form, RMatrix};
use lamplighter::tree::{self, RaySpec, TreeWord};
use lamplighter::Error;

const SCHEMA: &str = "lamplighter/1";

#[derive(Parser)]
#[command(name = "lamplighter", about = "Subgroups of the lamplighter groups (Z/p)^n wr Z")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Config {
    /// The prime p.
    #[arg(short = 'p', global = true, default_value_t = 2)]
    p: u32,
    /// Rank n of the base.
    #[arg(short = 'n', global = true, default_value_t = 1)]
    n: usize,
    /// Enumeration budget.
    #[arg(long, global = true)]
    budget: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as `--format dot`.
    #[arg(long, global = true)]
    dot: bool,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    depth: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomials over F_p.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Submodules of R^n.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Subgroups given as triples `s=..;V0=..;v=..`.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Subgroup counts by index.
    #[command(subcommand)]
    Count(CountCmd),
    /// Normal subgroups of the rank-one group.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Closure in the profinite and pro-p topologies.
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// The action on the p-regular rooted tree.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Rank gradients of synthesized chains.
    #[command(subcommand)]
    Gradient(GradientCmd),
}

#[derive(Subcommand)]
enum RingCmd {
    Factor {
        poly: String,
    },
    /// Least s > 0 with f | 1 - x^s.
    Ord {
        poly: String,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Smith form of a matrix written `a,b;c,d`.
    Smith {
        matrix: String,
    },
    /// Hermite rows of a submodule `[e=E: row | row]`.
    Hermite {
        module: String,
    },
    Detstar {
        module: String,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Member {
        triple: String,
        element: String,
    },
    /// Whether the first subgroup lies in the second.
    Include {
        a: String,
        b: String,
    },
    Intersect {
        a: String,
        b: String,
    },
    Index {
        triple: String,
    },
    Iso {
        triple: String,
    },
    Normal {
        triple: String,
    },
    Maximal {
        triple: String,
    },
    Weakmax {
        triple: String,
    },
    FromGens {
        elements: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CountCmd {
    Table {
        #[arg(short = 'm')]
        m: u64,
    },
    Enumerate {
        #[arg(short = 'm')]
        m: u64,
    },
    Normal {
        #[arg(short = 'm')]
        m: u64,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Classify {
        triple: String,
    },
    /// Inclusion of `B[f=..;s=..]` / `C[f=..;s=..]` forms.
    Include {
        a: String,
        b: String,
    },
    /// The B'/C' sublattice up to exponent `--depth`.
    PropLattice,
    Extensions {
        f: String,
        s: u64,
    },
}

#[derive(Subcommand)]
enum ClosureCmd {
    Profinite { triple: String },
    Prop { triple: String },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Image of a word; without a word, of sampled words of length `--depth`.
    Act {
        element: String,
        word: Option<String>,
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Vertex stabilizer of a word, or level stabilizer with `--level`.
    Stab {
        word: Option<String>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Stabilizer of the ray `u(q)`.
    Ray { ray: String },
    /// The recursion automaton; with `--depth`, the coset tree instead.
    Moore {
        /// Print the table that agrees with `tree act` instead.
        #[arg(long)]
        coset: bool,
    },
}

#[derive(Subcommand)]
enum GradientCmd {
    Synth {
        #[arg(long)]
        pattern: String,
    },
    Rg {
        #[arg(long)]
        pattern: String,
    },
}

/// A result in every format it supports.
struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
    dot: Option<String>,
}

impl Output {
    fn plain(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, csv: None, dot: None }
    }
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bool_out(b: bool) -> Output {
    Output::plain(yes_no(b), json!(b))
}

impl Config {
    fn budget(&self) -> u128 {
        self.budget.unwrap_or(DEFAULT_SUBMODULE_BUDGET)
    }

    fn triple(&self, s: &str) -> Res<SubgroupTriple> {
        Ok(SubgroupTriple::parse(self.p, self.n, s)?)
    }

    fn element(&self, s: &str) -> Res<GroupElement> {
        Ok(GroupElement::parse(self.p, self.n, s)?)
    }

    fn poly(&self, s: &str) -> Res<FpPoly> {
        Ok(FpPoly::parse(self.p, s)?)
    }
}

fn run(cfg: &Config, cmd: &Command) -> Res<(String, Output)> {
    let p = cfg.p;
    let (name, out) = match cmd {
        Command::Ring(c) => match c {
            RingCmd::Factor { poly } => {
                let f = cfg.poly(poly)?;
                let fs = f.factor()?;
                let text: Vec<String> = fs.iter().map(|(q, a)| format!("({q})^{a}")).collect();
                let js: Vec<Value> =
                    fs.iter().map(|(q, a)| json!({"factor": q.to_string(), "multiplicity": a})).collect();
                ("ring factor", Output::plain(text.join("*"), json!(js)))
            }
            RingCmd::Ord { poly } => {
                let o = cfg.poly(poly)?.ord_x_mod()?;
                ("ring ord", Output::plain(o.to_string(), json!(o)))
            }
        },
        Command::Module(c) => match c {
            ModuleCmd::Smith { matrix } => {
                let rows = matrix
                    .split(';')
                    .map(|r| r.split(',').map(|a| LaurentPoly::parse(p, a)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let cols = rows[0].len();
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(Failure::Input("matrix rows differ in length".into()));
                }
                let d: Vec<String> =
                    smith_form(&RMatrix::new(p, cols, rows)).diagonal().iter().map(|f| f.to_string()).collect();
                ("module smith", Output::plain(d.join(","), json!(d)))
            }
            ModuleCmd::Hermite { module } => {
                let u = parse_submodule_inline(p, cfg.n, module)?;
                let rows: Vec<Vec<String>> =
                    u.rows().iter().map(|r| r.iter().map(|a| a.to_string()).collect()).collect();
                let js = json!({"e": u.declared_exponent(), "rows": rows});
                ("module hermite", Output::plain(u.to_block().trim_end(), js))
            }
            ModuleCmd::Detstar { module } => {
                let q = parse_submodule_inline(p, cfg.n, module)?.quotient_invariants();
                let inv: Vec<String> = q.invariant_factors.iter().map(|f| f.to_string()).collect();
                let js = json!({
                    "det_star": q.det_star.to_string(),
                    "codim": q.codim,
                    "free_rank": q.free_rank,
                    "invariant_factors": inv,
                });
                ("module detstar", Output::plain(q.det_star.to_string(), js))
            }
        },
        Command::Group(c) => match c {
            GroupCmd::Member { triple, element } => {
                ("group member", bool_out(cfg.triple(triple)?.member(&cfg.element(element)?)))
            }
            GroupCmd::Include { a, b } => ("group include", bool_out(cfg.triple(a)?.includes_in(&cfg.triple(b)?)?)),
            GroupCmd::Intersect { a, b } => {
                let t = cfg.triple(a)?.intersect(&cfg.triple(b)?)?;
                ("group intersect", Output::plain(t.to_text(), json!(t.to_text())))
            }
            GroupCmd::Index { triple } => {
                let i = cfg.triple(triple)?.index();
                let text = i.as_ref().map_or("infinite".to_string(), |i| i.to_string());
                let js = i.map_or(Value::Null, |i| json!(i.to_string()));
                ("group index", Output::plain(text, js))
            }
            GroupCmd::Iso { triple } => {
                let t = cfg.triple(triple)?;
                let iso = t.iso_type().to_string();
                let js = json!({"iso": iso, "min_generators": t.min_generators()});
                ("group iso", Output::plain(iso, js))
            }
            GroupCmd::Normal { triple } => ("group normal", bool_out(cfg.triple(triple)?.is_normal())),
            GroupCmd::Maximal { triple } => ("group maximal", bool_out(cfg.triple(triple)?.is_maximal())),
            GroupCmd::Weakmax { triple } => ("group weakmax", bool_out(cfg.triple(triple)?.is_weakly_maximal())),
            GroupCmd::FromGens { elements } => {
                let gens = elements.iter().map(|e| cfg.element(e)).collect::<Res<Vec<_>>>()?;
                let t = triple_from_generators(&gens)?;
                ("group from-gens", Output::plain(t.to_text(), json!(t.to_text())))
            }
        },
        Command::Count(c) => match c {
            CountCmd::Table { m } => {
                let rows = counting::count_table(p, cfg.n, *m, cfg.budget())?;
                let csv = counting::count_table_csv(&rows);
                let js: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "m": r.m,
                            "a_m": r.a_m.to_string(),
                            "normal_m": r.normal_m.to_string(),
                            "s_m": r.s_m.to_string(),
                            "lower_bound": r.lower_bound.to_string(),
                        })
                    })
                    .collect();
                let out = Output { text: csv.trim_end().to_string(), json: json!(js), csv: Some(csv), dot: None };
                ("count table", out)
            }
            CountCmd::Enumerate { m } => {
                let ts = counting::enumerate_subgroups(p, cfg.n, *m, cfg.budget())?;
                let texts: Vec<String> = ts.iter().map(SubgroupTriple::to_text).collect();
                ("count enumerate", Output::plain(texts.join("\n"), json!(texts)))
            }
            CountCmd::Normal { m } => {
                let k = counting::count_normal(p, cfg.n, *m, cfg.budget())?;
                ("count normal", Output::plain(k.to_string(), json!(k.to_string())))
            }
        },
        Command::Lattice(c) => match c {
            LatticeCmd::Classify { triple } => {
                let nt = normal_lattice::classify(&cfg.triple(triple)?)?;
                ("lattice classify", Output::plain(nt.to_text(), json!(nt.to_text())))
            }
            LatticeCmd::Include { a, b } => {
                let (a, b) = (NormalTriple::parse(p, a)?, NormalTriple::parse(p, b)?);
                ("lattice include", bool_out(normal_lattice::includes_normal(&a, &b)))
            }
            LatticeCmd::PropLattice => {
                let lat = normal_lattice::pro_p_lattice(p, cfg.depth.unwrap_or(1) as u32);
                let labels: Vec<String> = lat.nodes.iter().map(|x| x.label()).collect();
                let text = format!("{}\nagrees: {}", labels.join(" "), yes_no(lat.agrees()));
                let js = json!({"nodes": labels, "agrees": lat.agrees()});
                let dot = normal_lattice::pro_p_dot(&lat);
                ("lattice prop-lattice", Output { text, json: js, csv: None, dot: Some(dot) })
            }
            LatticeCmd::Extensions { f, s } => {
                let k = normal_lattice::extension_count(&cfg.poly(f)?, *s);
                ("lattice extensions", Output::plain(k.to_string(), json!(k)))
            }
        },
        Command::Closure(c) => match c {
            ClosureCmd::Profinite { triple } => {
                ("closure profinite", bool_out(is_profinitely_closed(&cfg.triple(triple)?)))
            }
            ClosureCmd::Prop { triple } => {
                let t = cfg.triple(triple)?;
                let closed = is_pro_p_closed(&t);
                let crit = if t.n() == 1 { n1_pro_p_criterion(&t).ok() } else { None };
                let depth = if closed && t.index().is_some() {
                    completion::p_chain_witness(&t).ok().map(|ch| ch.len() - 1)
                } else {
                    None
                };
                let js = json!({"closed": closed, "rank_one_criterion": crit, "chain_depth": depth});
                ("closure prop", Output::plain(yes_no(closed), js))
            }
        },
        Command::Tree(c) => tree_cmd(cfg, c)?,
        Command::Gradient(c) => match c {
            GradientCmd::Synth { pattern } => {
                let spec = ChainSpec::parse(p, cfg.n, pattern)?;
                let chain = gradient::synthesize_chain(&spec)?;
                let rg = gradient::rg(&chain)?;
                let d = chain.d_sequence();
                let mut csv = String::from("i,index,d,rg,triple\n");
                let mut js = Vec::new();
                for (i, t) in chain.triples().iter().enumerate() {
                    let idx = t.index().expect("finite index");
                    csv.push_str(&format!("{i},{idx},{},{},\"{}\"\n", d[i], rg[i], t.to_text()));
                    js.push(json!({"i": i, "index": idx.to_string(), "d": d[i], "rg": rg[i].to_string(), "triple": t.to_text()}));
                }
                let out = Output { text: csv.trim_end().to_string(), json: json!(js), csv: Some(csv), dot: None };
                ("gradient synth", out)
            }
            GradientCmd::Rg { pattern } => {
                let spec = ChainSpec::parse(p, cfg.n, pattern)?;
                let chain = gradient::synthesize_chain(&spec)?;
                let rg: Vec<String> = gradient::rg(&chain)?.iter().map(|q| q.to_string()).collect();
                let limit = gradient::rg_limit(&chain)?.to_string();
                let text = format!("{}\nlimit: {limit}", rg.join(","));
                ("gradient rg", Output::plain(text, json!({"rg": rg, "limit": limit})))
            }
        },
    };
    Ok((name.to_string(), out))
}

fn tree_cmd(cfg: &Config, c: &TreeCmd) -> Res<(&'static str, Output)> {
    let p = cfg.p;
    if cfg.n != 1 {
        return Err(Failure::Input("the tree action is defined for n = 1".into()));
    }
    Ok(match c {
        TreeCmd::Act { element, word, samples } => {
            let g = cfg.element(element)?;
            let words = match word {
                Some(w) => vec![TreeWord::parse(p, w)?],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    let m = cfg.depth.unwrap_or(4);
                    (0..*samples)
                        .map(|_| TreeWord::new(p, (0..m).map(|_| rng.gen_range(0..p)).collect()))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            let mut lines = Vec::new();
            let mut js = Vec::new();
            for w in &words {
                let img = tree::act(&g, w)?;
                lines.push(format!("{w} -> {img}"));
                js.push(json!({"word": w.to_string(), "image": img.to_string()}));
            }
            let text = if word.is_some() { tree::act(&g, &words[0])?.to_string() } else { lines.join("\n") };
            ("tree act", Output::plain(text, json!(js)))
        }
        TreeCmd::Stab { word, level } => {
            let t = match (word, level) {
                (Some(w), None) => tree::vertex_stabilizer(&TreeWord::parse(p, w)?),
                (None, Some(m)) => tree::level_stabilizer(p, *m),
                _ => return Err(Failure::Input("give either a word or --level".into())),
            };
            ("tree stab", Output::plain(t.to_text(), json!(t.to_text())))
        }
        TreeCmd::Ray { ray } => {
            let r = RaySpec::parse(p, ray)?;
            let g = tree::ray_stabilizer(&r)?;
            let js = json!({"ray": r.to_string(), "generator": g.to_string()});
            ("tree ray", Output::plain(g.to_string(), js))
        }
        TreeCmd::Moore { coset } => match cfg.depth {
            Some(d) => {
                let dot = tree::tree_dot(p, d);
                let words: Vec<String> = TreeWord::all(p, d).iter().map(|w| w.to_string()).collect();
                let out = Output { text: words.join(" "), json: json!(words), csv: None, dot: Some(dot) };
                ("tree moore", out)
            }
            None => {
                let a = if *coset { tree::coset_automaton(p) } else { tree::wreath_recursion(p) };
                let mut lines = Vec::new();
                let mut js = Vec::new();
                for i in 0..p as usize {
                    for l in 0..p as usize {
                        lines.push(format!("a{i} ({l},{}) a{}", a.out[i][l], a.next[i][l]));
                        js.push(json!({"state": i, "input": l, "output": a.out[i][l], "next": a.next[i][l]}));
                    }
                }
                let out = Output { text: lines.join("\n"), json: json!(js), csv: None, dot: Some(a.to_dot()) };
                ("tree moore", out)
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = &cli.cfg;
    if !is_prime(cfg.p as u64) {
        eprintln!("error: {} is not prime", cfg.p);
        return ExitCode::from(1);
    }
    if cfg.n == 0 || cfg.budget == Some(0) {
        eprintln!("error: n and the budget must be positive");
        return ExitCode::from(1);
    }
    let format = if cfg.dot { Format::Dot } else { cfg.format };
    match run(cfg, &cli.cmd) {
        Ok((name, out)) => {
            let body = match format {
                Format::Text => Some(out.text + "\n"),
                Format::Json => {
                    let v = json!({"schema": SCHEMA, "command": name, "p": cfg.p, "n": cfg.n, "result": out.json});
                    Some(format!("{v}\n"))
                }
                Format::Csv => out.csv,
                Format::Dot => out.dot,
            };
            match body {
                Some(b) => {
                    print!("{b}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("error: `{name}` has no output in this format");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
