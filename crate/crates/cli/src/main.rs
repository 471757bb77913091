use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use localslice::classify::{classify_with, ClassifyError, SliceData};
use localslice::cluster::{parse_tilting_input, ClusterError, TiltingSet};
use localslice::component::{load_component, ARComponent, VertexId, VertexSet};
use localslice::slices::{
    completion, enumerate_local_slices, is_rightmost, parse_slices, reflect, Slice, SliceError,
};
use localslice::zq::Window;

#[derive(Parser)]
#[command(
    name = "localslice",
    version,
    about = "Local slices in transjective components of cluster-tilted algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the input and print n, t and the summands
    Check(Source),
    /// List all local slices of the safe zone
    Slices {
        #[command(flatten)]
        src: Source,
        /// only slices whose sources are all injective
        #[arg(long)]
        rightmost: bool,
    },
    /// Completion and reflection of a rightmost slice at an injective source
    Reflect {
        #[command(flatten)]
        src: Source,
        /// file with a `slice:` line
        #[arg(long)]
        slice: PathBuf,
        /// vertex id, label, or index j of the injective I(j)
        #[arg(long)]
        source: String,
    },
    /// Modules lying on no local slice, cross-checked by brute force
    Classify(Source),
    /// The component window as a DOT digraph
    ExportDot {
        #[command(flatten)]
        src: Source,
        /// file with a `slice:` line to highlight
        #[arg(long)]
        slice: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// quiver file, optionally with summand/regular/mutation lines
    #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
    input: Option<PathBuf>,
    /// component fixture file
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// level window for a derived component
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
    /// extra mutations applied after those in the input, e.g. "2 4 6"
    #[arg(long)]
    mutations: Option<String>,
}

enum Failure {
    Input(String),
    Math(String),
    /// an inconsistency found after the report was complete
    Report(String, String),
}

impl From<ClusterError> for Failure {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::Inconsistent { .. } => Failure::Math(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<SliceError> for Failure {
    fn from(e: SliceError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Slice(e) => e.into(),
            ClassifyError::BadCounts { .. } | ClassifyError::OutsideZone(_) => {
                Failure::Input(e.to_string())
            }
            e => Failure::Math(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

enum Loaded {
    Derived(Box<TiltingSet>, Option<Window>),
    Fixture(Box<ARComponent>),
}

impl Loaded {
    fn component(&self, extra: i64) -> Result<ARComponent, Failure> {
        match self {
            Loaded::Derived(t, w) => {
                let w = match w {
                    Some(w) => w.widen(extra),
                    None => t.default_window(extra)?,
                };
                Ok(t.build_component(Some(w))?)
            }
            Loaded::Fixture(c) => Ok((**c).clone()),
        }
    }
}

fn load(src: &Source) -> Result<Loaded, Failure> {
    if let Some(path) = &src.fixture {
        if src.window.is_some() || src.mutations.is_some() {
            return Err(Failure::Input(
                "--window and --mutations apply only to --input".into(),
            ));
        }
        let c = load_component(&read(path)?).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok(Loaded::Fixture(Box::new(c)));
    }
    let path = src.input.as_ref().expect("clap enforces one input");
    let mut input = parse_tilting_input(&read(path)?)?;
    if let Some(ms) = &src.mutations {
        for k in ms
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
        {
            let k = k
                .parse()
                .map_err(|_| Failure::Input(format!("bad mutation index `{k}`")))?;
            input.mutations.push(k);
        }
    }
    let t = input.tilting_set()?;
    let w = match src.window.as_deref() {
        Some(&[lo, hi]) => Some(Window::new(lo, hi).map_err(|e| Failure::Input(e.to_string()))?),
        _ => None,
    };
    Ok(Loaded::Derived(Box::new(t), w))
}

fn fmt_set(c: &ARComponent, s: &VertexSet) -> String {
    let mut names: Vec<&str> = s.iter().map(|&v| c.id(v)).collect();
    names.sort();
    format!("{{{}}}", names.join(", "))
}

fn check(src: &Source) -> Result<String, Failure> {
    let loaded = load(src)?;
    let c = loaded.component(0)?;
    let mut out = format!("n={} t={}\n", c.n(), c.t());
    if let Loaded::Derived(t, _) = &loaded {
        out += &t.render();
    }
    let _ = writeln!(out, "vertices={} safe={}", c.len(), c.safe_zone().len());
    Ok(out)
}

fn nonempty_safe_zone(c: &ARComponent) -> Result<(), Failure> {
    if c.safe_zone().is_empty() {
        Err(Failure::Input("the safe zone is empty".into()))
    } else {
        Ok(())
    }
}

fn slices(src: &Source, rightmost: bool) -> Result<String, Failure> {
    let c = load(src)?.component(0)?;
    nonempty_safe_zone(&c)?;
    let mut out = String::new();
    for s in enumerate_local_slices(&c) {
        if !rightmost || is_rightmost(&c, &s) {
            out += &s.render(&c);
            out.push('\n');
        }
    }
    Ok(out)
}

fn resolve(c: &ARComponent, key: &str) -> Result<VertexId, Failure> {
    if let Some(v) = c.vertex(key) {
        return Ok(v);
    }
    if let Some(v) = c.vertices().find(|&v| c.label(v) == Some(key)) {
        return Ok(v);
    }
    key.parse::<usize>()
        .ok()
        .and_then(|j| c.injective(j))
        .ok_or_else(|| Failure::Input(format!("unknown vertex `{key}`")))
}

fn first_slice(c: &ARComponent, path: &Path) -> Result<VertexSet, Failure> {
    parse_slices(c, &read(path)?)?
        .into_iter()
        .next()
        .ok_or_else(|| Failure::Input(format!("{}: no `slice:` line", path.display())))
}

fn reflect_cmd(src: &Source, slice: &Path, source: &str) -> Result<String, Failure> {
    let c = load(src)?.component(0)?;
    let s = Slice::new(&c, first_slice(&c, slice)?)?;
    if !is_rightmost(&c, &s) {
        return Err(SliceError::NotRightmost.into());
    }
    let x = resolve(&c, source)?;
    let h = completion(&c, &s, x)?;
    let mut out = format!("source: {}\n", c.display(x));
    for (i, step) in h.chain.iter().enumerate() {
        let name = if i == 0 {
            "H_1".to_string()
        } else if i % 2 == 1 {
            format!("H_{}'", i / 2 + 2)
        } else {
            format!("H_{}", i / 2 + 1)
        };
        let _ = writeln!(out, "{name} = {}", fmt_set(&c, step));
    }
    let _ = writeln!(out, "H = {}", fmt_set(&c, &h.members));
    let _ = writeln!(out, "J = {}", fmt_set(&c, &h.j));
    let _ = writeln!(out, "J- = {}", fmt_set(&c, &h.j_minus));
    let _ = writeln!(out, "E = {}", fmt_set(&c, &h.e));
    let r = reflect(&c, &s, x).map_err(|e| match e {
        SliceError::NotLocalSlice(_) => Failure::Math(format!("reflection failed: {e}")),
        e => e.into(),
    })?;
    out += &r.render(&c);
    out.push('\n');
    Ok(out)
}

fn classify(src: &Source) -> Result<String, Failure> {
    let loaded = load(src)?;
    let c = loaded.component(0)?;
    nonempty_safe_zone(&c)?;
    let data = SliceData::new(&c)?;
    let report = classify_with(&data)?;
    let mut out = report.render(&c);
    if let Loaded::Derived(..) = loaded {
        // the answer must not depend on the window
        let wide = loaded.component(2)?;
        let wide_data = SliceData::new(&wide)?;
        let wide_report = classify_with(&wide_data)?;
        let ids = |c: &ARComponent, d: &SliceData| -> BTreeSet<String> {
            d.rightmost().iter().map(|s| s.render(c)).collect()
        };
        let same_off = report.off_slice_ids(&c) == wide_report.off_slice_ids(&wide);
        let same_rightmost = ids(&c, &data) == ids(&wide, &wide_data);
        if !(same_off && same_rightmost) {
            return Err(Failure::Math(
                "window not stabilized: widening by 2 levels changed the answer".into(),
            ));
        }
        out += "stable under widening by 2\n";
    }
    if let Err(e) = report.check_rightmost() {
        return Err(Failure::Report(out, e.to_string()));
    }
    Ok(out)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn export_dot(src: &Source, slice: Option<&Path>) -> Result<String, Failure> {
    let c = load(src)?.component(0)?;
    let highlight = match slice {
        Some(p) => first_slice(&c, p)?,
        None => VertexSet::new(),
    };
    let mut order: Vec<VertexId> = c.vertices().collect();
    order.sort_by(|a, b| c.id(*a).cmp(c.id(*b)));
    // tau-orbits, passing from I(y) to P(y)
    let mut orbit: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut rows: Vec<Vec<VertexId>> = Vec::new();
    for &v in &order {
        if orbit.contains_key(&v) {
            continue;
        }
        let mut start = v;
        let mut guard = 0;
        while let Some(p) = c
            .tau(start)
            .or_else(|| c.proj_mark(start).and_then(|j| c.injective(j)))
        {
            if p == v || guard > c.len() {
                break;
            }
            start = p;
            guard += 1;
        }
        let mut row = Vec::new();
        let mut cur = Some(start);
        while let Some(u) = cur {
            if orbit.insert(u, rows.len()).is_some() {
                break;
            }
            row.push(u);
            cur = c
                .tau_inv(u)
                .or_else(|| c.inj_mark(u).and_then(|j| c.projective(j)));
        }
        rows.push(row);
    }
    let mut out = String::from("digraph component {\n  node [fontsize=10];\n");
    for &v in &order {
        let shape = if c.is_projective(v) {
            "box"
        } else if c.is_injective(v) {
            "diamond"
        } else {
            "ellipse"
        };
        let mut attrs = format!("label={}, shape={shape}", quote(c.display(v)));
        if highlight.contains(&v) {
            attrs += ", style=filled, fillcolor=gold";
        }
        if !c.is_safe(v) {
            attrs += ", color=gray";
        }
        let _ = writeln!(out, "  {} [{attrs}];", quote(c.id(v)));
    }
    for row in &rows {
        let names: Vec<String> = row.iter().map(|&v| quote(c.id(v))).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
    }
    for &v in &order {
        let mut next: Vec<_> = c.out(v).to_vec();
        next.sort_by(|a, b| c.id(a.0).cmp(c.id(b.0)));
        for (w, m) in next {
            let label = if m > 1 {
                format!(" [label=\"{m}\"]")
            } else {
                String::new()
            };
            let _ = writeln!(out, "  {} -> {}{label};", quote(c.id(v)), quote(c.id(w)));
        }
        if let Some(t) = c.tau(v) {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dashed, constraint=false, arrowhead=none];",
                quote(c.id(v)),
                quote(c.id(t))
            );
        }
    }
    out += "}\n";
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Check(src) => check(src),
        Cmd::Slices { src, rightmost } => slices(src, *rightmost),
        Cmd::Reflect { src, slice, source } => reflect_cmd(src, slice, source),
        Cmd::Classify(src) => classify(src),
        Cmd::ExportDot { src, slice } => export_dot(src, slice.as_deref()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Math(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Report(out, msg)) => {
            print!("{out}");
            eprintln!("inconsistency: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
