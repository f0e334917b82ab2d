use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tiedmon::brauer::brauer_normal_form;
use tiedmon::closure::{closure, MonoidTable, DEFAULT_LIMIT};
use tiedmon::presentation::{catalog, verify_catalog, word_equal, PresentationName};
use tiedmon::ramified::{
    diagram_family_generators, factor_balanced, factor_ramified_brauer, family_generators,
    DiagramFamily, Family,
};
use tiedmon::render::{render_diagram, render_ramified, Format};
use tiedmon::sizes::{bbr_size_with, size_formula, two_balanced_count_recursive, SizeFamily};
use tiedmon::store::{CacheKey, Store};
use tiedmon::tied_jones::{boxed_count, catalan_triangle_rows, tj_normalize};
use tiedmon::{Diagram, Error, MonoidElement, Ramified, SetPartition, Word};

#[derive(Parser)]
#[command(name = "tiedmon", version, about = "Diagram monoids, their ramified and tied versions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size of a family from its closed formula.
    Count {
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate the monoid generated by a family (or explicit generators).
    Closure {
        /// RS, RBr, bBr, bJ, tJ, S, J or Br; ignored with --gens.
        family: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        /// Generators as a word, e.g. "s1 e2 f1", evaluated as ramified pairs.
        #[arg(long)]
        gens: Option<String>,
        /// Print every element in discovery order.
        #[arg(long)]
        elements: bool,
        #[arg(long)]
        no_cache: bool,
    },
    /// Check every relation of a presentation in its faithful image.
    Verify {
        presentation: String,
        #[arg(long)]
        n: usize,
    },
    /// Normal form or factorization of an element.
    Nf {
        /// P, Br, RBr, bBr or tJ.
        monoid: String,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Product of two diagrams or two ramified pairs.
    Product {
        #[arg(long)]
        n: usize,
        left: String,
        right: String,
    },
    /// Tables of numbers as CSV.
    Table {
        /// bBr-sizes, Bnj, catalan or U.
        name: String,
        #[arg(long)]
        max: usize,
    },
    /// Draw a diagram or ramified pair.
    Render {
        #[arg(long, default_value = "text")]
        format: String,
        elem: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide equality of two words in a presented monoid.
    WordEq {
        family: String,
        #[arg(long)]
        n: usize,
        left: String,
        right: String,
    },
}

enum Elem {
    Diagram(Diagram),
    Ramified(Ramified),
}

fn parse_elem(s: &str, n: Option<usize>) -> Result<Elem, Error> {
    Ok(match (s.contains(';'), n) {
        (true, Some(n)) => Elem::Ramified(Ramified::parse_with_n(s, n)?),
        (true, None) => Elem::Ramified(s.parse()?),
        (false, Some(n)) => Elem::Diagram(Diagram::parse_with_n(s, n)?),
        (false, None) => Elem::Diagram(s.parse()?),
    })
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

fn table_output<T: MonoidElement + std::fmt::Display>(
    name: &str,
    n: usize,
    table: &MonoidTable<T>,
    elements: bool,
) -> Output {
    let mut text = format!("{name} n={n}: {} elements, {} units\n", table.len(), table.units().len());
    let mut json = json!({
        "family": name,
        "n": n,
        "size": table.len(),
        "units": table.units().len(),
        "generators": table.labels(),
    });
    if elements {
        let list: Vec<String> = table.elements().iter().map(|e| e.to_string()).collect();
        for e in &list {
            text.push_str(e);
            text.push('\n');
        }
        json["elements"] = json!(list);
    }
    Output::new(text.trim_end(), json)
}

fn cached<T>(
    store: Option<&Store>,
    key: &CacheKey,
    compute: impl FnOnce() -> tiedmon::Result<MonoidTable<T>>,
) -> tiedmon::Result<MonoidTable<T>>
where
    T: MonoidElement + serde::Serialize + serde::de::DeserializeOwned,
{
    match store {
        Some(s) => {
            let (table, hit) = s.get_or_compute(key, compute)?;
            log::info!("cache {} for {}", if hit { "hit" } else { "miss" }, key.family);
            Ok(table)
        }
        None => compute(),
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.command {
        Command::Count { family, n } => {
            let fam: SizeFamily = family.parse()?;
            let size = size_formula(fam, n)?.to_string();
            Ok(Output::new(size.clone(), json!({"family": family, "n": n, "size": size})))
        }
        Command::Closure { family, n, limit, gens, elements, no_cache } => {
            let store = (!no_cache).then(Store::from_env);
            if let Some(g) = gens {
                let w: Word = g.parse()?;
                let gens: Vec<(String, Ramified)> = w
                    .tokens()
                    .iter()
                    .map(|t| Ok((t.to_string(), tiedmon::ramified::eval_ramified(&Word(vec![*t]), n)?)))
                    .collect::<tiedmon::Result<_>>()?;
                let key = CacheKey::new("custom", n, &gens);
                let table = cached(store.as_ref(), &key, || closure(Ramified::identity(n)?, &gens, limit))?;
                return Ok(table_output("custom", n, &table, elements));
            }
            let name = family.ok_or_else(|| Error::UnknownName("closure needs a family or --gens".into()))?;
            if let Ok(f) = name.parse::<DiagramFamily>() {
                let gens = diagram_family_generators(f, n)?;
                let key = CacheKey::new(f.id(), n, &gens);
                let table = cached(store.as_ref(), &key, || closure(Diagram::identity(n)?, &gens, limit))?;
                return Ok(table_output(f.id(), n, &table, elements));
            }
            let f: Family = name.parse()?;
            let gens = family_generators(f, n)?;
            let key = CacheKey::new(f.id(), n, &gens);
            let table = cached(store.as_ref(), &key, || {
                tiedmon::ramified::build_family_with_limit(f, n, limit)
            })?;
            Ok(table_output(f.id(), n, &table, elements))
        }
        Command::Verify { presentation, n } => {
            let name: PresentationName = presentation.parse()?;
            let p = catalog(name, n)?;
            let report = verify_catalog(name, n)?;
            let failed: Vec<_> = report.iter().filter(|c| !c.passed()).collect();
            let mut text = format!(
                "{name} n={n}: {} generators, {} defining and {} derived relations, {} failed",
                p.generators.len(),
                p.relations.len(),
                p.derived.len(),
                failed.len()
            );
            for c in &failed {
                text.push_str(&format!(
                    "\nFAIL {} {:?}: {} vs {}",
                    c.label,
                    c.indices,
                    c.lhs_image.as_deref().unwrap_or(""),
                    c.rhs_image.as_deref().unwrap_or("")
                ));
            }
            let mut out = Output::new(text, serde_json::to_value(&report).expect("report serializes"));
            out.ok = failed.is_empty();
            Ok(out)
        }
        Command::Nf { monoid, elem, n } => nf(&monoid, &elem, n),
        Command::Product { n, left, right } => {
            let (text, json) = match (parse_elem(&left, Some(n))?, parse_elem(&right, Some(n))?) {
                (Elem::Diagram(a), Elem::Diagram(b)) => {
                    let p = a.concat(&b)?;
                    (p.to_string(), serde_json::to_value(&p).expect("serializes"))
                }
                (Elem::Ramified(a), Elem::Ramified(b)) => {
                    let p = a.rproduct(&b)?;
                    (p.to_string(), serde_json::to_value(&p).expect("serializes"))
                }
                _ => return Err(Error::Parse("cannot multiply a diagram by a ramified pair".into())),
            };
            Ok(Output::new(text, json))
        }
        Command::Table { name, max } => table(&name, max),
        Command::Render { format, elem, n } => {
            let format: Format = format.parse()?;
            let drawing = match parse_elem(&elem, n)? {
                Elem::Diagram(d) => render_diagram(&d, format),
                Elem::Ramified(r) => render_ramified(&r, format),
            };
            Ok(Output::new(drawing.trim_end(), json!({"format": format_name(format), "output": drawing})))
        }
        Command::WordEq { family, n, left, right } => {
            let name: PresentationName = family.parse()?;
            let (u, v): (Word, Word) = (left.parse()?, right.parse()?);
            let equal = word_equal(name, n, &u, &v)?;
            let text = if equal { "equal" } else { "not equal" };
            Ok(Output::new(text, json!({"family": name.id(), "n": n, "equal": equal})))
        }
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Svg => "svg",
    }
}

fn nf(monoid: &str, elem: &str, n: Option<usize>) -> Result<Output, Error> {
    match monoid {
        "P" | "Pn" => {
            let p: SetPartition = elem.parse()?;
            let ties: Vec<String> = p
                .fitzgerald_decompose()
                .iter()
                .map(|(i, j)| format!("e{{{i},{j}}}"))
                .collect();
            let text = if ties.is_empty() { "1".to_string() } else { ties.join(" ") };
            Ok(Output::new(text.clone(), json!({"monoid": "P", "word": text})))
        }
        "Br" | "Brn" => {
            let Elem::Diagram(d) = parse_elem(elem, n)? else {
                return Err(Error::Parse("expected a diagram".into()));
            };
            let nf = brauer_normal_form(&d)?;
            let text = format!("s = {} ; k = {} ; s' = {}", nf.s, nf.k, nf.s_prime);
            Ok(Output::new(text, serde_json::to_value(&nf).expect("serializes")))
        }
        "RBr" | "Qn" | "bBr" | "Wn" => {
            let Elem::Ramified(r) = parse_elem(elem, n)? else {
                return Err(Error::Parse("expected `I ; R`".into()));
            };
            let word = if monoid.starts_with('b') || monoid == "Wn" {
                factor_balanced(&r)?.to_word()
            } else {
                factor_ramified_brauer(&r)?
            };
            let text = word.to_string();
            Ok(Output::new(text.clone(), json!({"monoid": monoid, "word": text})))
        }
        "tJ" | "tJn" => {
            let n = n.ok_or_else(|| Error::Parse("tJ normal forms need --n".into()))?;
            let w: Word = elem.parse()?;
            let nf = tj_normalize(&w, n)?;
            let runs: Vec<[usize; 2]> = nf.f.runs().iter().map(|&(j, k)| [j, k]).collect();
            Ok(Output::new(
                nf.to_string(),
                json!({"monoid": "tJ", "normal_form": nf.to_string(), "runs": runs, "ties": nf.e}),
            ))
        }
        other => Err(Error::UnknownName(format!("normal forms for {other}"))),
    }
}

fn table(name: &str, max: usize) -> Result<Output, Error> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let header: &[&str] = match name {
        "bBr-sizes" => {
            for n in 1..=max {
                rows.push(vec![n.to_string(), bbr_size_with(n, two_balanced_count_recursive)?.to_string()]);
            }
            &["n", "size"]
        }
        "Bnj" => {
            for n in 1..=max {
                for j in 1..=n {
                    rows.push(vec![n.to_string(), j.to_string(), boxed_count(n, j)?.to_string()]);
                }
            }
            &["n", "j", "B"]
        }
        "catalan" => {
            for (n, row) in catalan_triangle_rows(max).iter().enumerate() {
                for (k, t) in row.iter().enumerate() {
                    rows.push(vec![n.to_string(), k.to_string(), t.to_string()]);
                }
            }
            &["n", "k", "T"]
        }
        "U" => {
            for n in 0..=max {
                for k in 0..=n / 2 {
                    rows.push(vec![n.to_string(), k.to_string(), two_balanced_count_recursive(n, k)?.to_string()]);
                }
            }
            &["n", "k", "U"]
        }
        other => return Err(Error::UnknownName(format!("table {other}"))),
    };
    let mut text = header.join(",");
    for r in &rows {
        text.push('\n');
        text.push_str(&r.join(","));
    }
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().map(|v| json!(v))).collect()))
        .collect();
    Ok(Output::new(text, json!({"table": name, "rows": json_rows})))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if as_json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if as_json {
                println!("{}", json!({"error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
