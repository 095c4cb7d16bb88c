//! `vcrg`: presentations, enumeration and classification checks for
//! virtual complex reflection groups of rank two.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use vcrg_core::abelian::abelianize;
use vcrg_core::analysis::{
    check_hom, column_swap_map, hom_count, nm_swap_images, verify_central_extension, GenMap,
    HomVerdict,
};
use vcrg_core::classify::{
    column_multiset, hyperplane_classes, is_finite, orders_multiset, reflection_isomorphic,
    shephard_todd_name, table1_cases,
};
use vcrg_core::coset::{group_order, todd_coxeter, Decision, Enumeration, EnumerationLimits, Order};
use vcrg_core::families::{center_word, delta_word, j_group, triangle_plus, vcrg_presentation};
use vcrg_core::rewriting::{subgroup_presentation, RsSetup};
use vcrg_core::tietze::{tietze_simplify, TietzeBudget};
use vcrg_core::{Format, GenId, Presentation, TriangleParams, VcrgParams, Word};

/// Parameter tuples are written k,b,n,c,m and denote
/// W_b^c(k, bn, cm) = J(k bn cm / 1 n m), which needs gcd(n, m) = 1.
#[derive(Parser)]
#[command(name = "vcrg", version, about)]
struct Cli {
    /// Bound on live cosets for every enumeration.
    #[arg(long, global = true, env = "VCRG_MAX_COSETS")]
    max_cosets: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Which presentation to work on. Exactly one source must be given.
#[derive(Args, Clone, Debug)]
struct GroupArgs {
    #[arg(long, requires_all = ["b", "n", "c", "m"], conflicts_with_all = ["params", "j", "triangle", "input"])]
    k: Option<u32>,
    #[arg(long, requires = "k")]
    b: Option<u32>,
    #[arg(long, requires = "k")]
    n: Option<u32>,
    #[arg(long, requires = "k")]
    c: Option<u32>,
    #[arg(long, requires = "k")]
    m: Option<u32>,
    /// Virtual group W_b^c(k, bn, cm), as k,b,n,c,m.
    #[arg(long, conflicts_with_all = ["j", "triangle", "input"])]
    params: Option<VcrgParams>,
    /// Parent group J(k, n, m), as k,n,m.
    #[arg(long, value_name = "K,N,M", conflicts_with_all = ["triangle", "input"])]
    j: Option<String>,
    /// Alternating triangle group W⁺_{k,n,m}, as k,n,m.
    #[arg(long, value_name = "K,N,M", conflicts_with = "input")]
    triangle: Option<String>,
    /// Presentation JSON file, `-` for stdin.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IsoMap {
    NmSwap,
    ColumnSwap,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation.
    Present {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Order of the group by coset enumeration.
    Order {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Index of a subgroup, or of a normal closure with --normal.
    Index {
        #[command(flatten)]
        group: GroupArgs,
        /// Subgroup generators, separated by `;`.
        #[arg(long, default_value = "")]
        subgroup: String,
        /// Use the normal closure of the words instead.
        #[arg(long)]
        normal: bool,
        /// Include the coset table (rows 1-based).
        #[arg(long)]
        table: bool,
    },
    /// The central element Δ of a virtual group.
    Center {
        #[arg(long)]
        params: VcrgParams,
        /// Check centrality, φ(Δ) = 1 and |Δ|·|W⁺| = |W| by enumeration.
        #[arg(long)]
        verify: bool,
    },
    /// Compare two virtual groups up to reflection isomorphism.
    Classify {
        #[arg(long)]
        p1: VcrgParams,
        #[arg(long)]
        p2: VcrgParams,
    },
    /// Verify one of the explicit isomorphisms.
    Iso {
        #[arg(long, value_enum)]
        map: IsoMap,
        /// For nm-swap: the source k,b,n,c,m.
        #[arg(long, required_if_eq("map", "nm-swap"))]
        params: Option<VcrgParams>,
        /// For column-swap: k,n,m, mapping J(k,m,n) to J(k,n,m).
        #[arg(long, value_name = "K,N,M", required_if_eq("map", "column-swap"))]
        j: Option<String>,
    },
    /// Reidemeister–Schreier rewriting for a cyclic quotient.
    Rs {
        /// Presentation JSON file, `-` for stdin.
        #[arg(long)]
        input: String,
        /// The distinguished generator.
        #[arg(long)]
        generator: String,
        #[arg(long)]
        modulus: u32,
        /// Apply Tietze simplification to the result.
        #[arg(long)]
        simplify: bool,
    },
    /// Invariant factors of the abelianization (0 for each free factor).
    Abelianize {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Number of homomorphisms to the symmetric group S_d.
    Homcount {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Batch verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Enumerate every finite classification row instance up to an order bound.
    Table1 {
        #[arg(long, default_value_t = 5000)]
        max_order: u64,
        /// Bound on the free parameters of the infinite families.
        #[arg(long, default_value_t = 4)]
        family_cap: u32,
    },
}

/// Successful output, or a verification failure (exit code 1).
enum Outcome {
    Ok(Value),
    Failed(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match cli.max_cosets {
        Some(n) => EnumerationLimits::with_max_cosets(n),
        None => EnumerationLimits::default(),
    };
    match run(cli.command, limits) {
        Ok(Outcome::Ok(v)) => {
            print_value(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v)) => {
            print_value(&v);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(2)
        }
    }
}

fn print_value(v: &Value) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = match v {
        Value::String(s) => writeln!(out, "{s}"),
        other => writeln!(out, "{other}"),
    };
}

fn parse_triple(s: &str) -> anyhow::Result<(u32, u32, u32)> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad triple {s:?}"))?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => bail!("expected three comma-separated integers, got {s:?}"),
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_group(g: &GroupArgs) -> anyhow::Result<Presentation> {
    if let Some(k) = g.k {
        let p = VcrgParams::new(k, g.b.unwrap(), g.n.unwrap(), g.c.unwrap(), g.m.unwrap())?;
        return Ok(vcrg_presentation(&p)?);
    }
    if let Some(p) = &g.params {
        return Ok(vcrg_presentation(p)?);
    }
    if let Some(j) = &g.j {
        let (k, n, m) = parse_triple(j)?;
        return Ok(j_group(k, n, m));
    }
    if let Some(t) = &g.triangle {
        let (k, n, m) = parse_triple(t)?;
        return Ok(triangle_plus(&TriangleParams::new(k, n, m)?));
    }
    if let Some(path) = &g.input {
        return Ok(Presentation::from_json(&read_input(path)?)?);
    }
    bail!("no group given: use --k/--b/--n/--c/--m, --params, --j, --triangle or --input")
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(n) => json!(n),
        Order::Unknown => Value::Null,
    }
}

fn decision_json(d: Decision) -> Value {
    match d {
        Decision::True => json!(true),
        Decision::False => json!(false),
        Decision::Unknown => Value::Null,
    }
}

fn verdict_json(v: &HomVerdict) -> Value {
    match v {
        HomVerdict::Verified => json!({ "verdict": "verified" }),
        HomVerdict::Failed(r) => json!({ "verdict": "failed", "relator": r.to_string() }),
        HomVerdict::Unknown => json!({ "verdict": "unknown" }),
    }
}

fn images_json(map: &GenMap) -> Value {
    let m: BTreeMap<String, String> = map
        .images
        .iter()
        .map(|(g, w)| (g.to_string(), w.to_string()))
        .collect();
    json!(m)
}

fn run(cmd: Command, limits: EnumerationLimits) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Present { group, format } => {
            let pres = load_group(&group)?;
            Ok(Outcome::Ok(Value::String(pres.render(format))))
        }
        Command::Order { group } => {
            let pres = load_group(&group)?;
            match group_order(&pres, limits) {
                Order::Finite(n) => Ok(Outcome::Ok(json!({ "order": n }))),
                Order::Unknown => bail!(
                    "enumeration exceeded {} cosets; the order is unknown",
                    limits.max_cosets
                ),
            }
        }
        Command::Index {
            group,
            subgroup,
            normal,
            table,
        } => {
            let pres = load_group(&group)?;
            let words: Vec<Word> = subgroup
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| pres.parse_word(s))
                .collect::<Result<_, _>>()?;
            let (pres, subs) = if normal {
                (pres.with_relators(words)?, Vec::new())
            } else {
                (pres, words)
            };
            match todd_coxeter(&pres, &subs, limits)? {
                Enumeration::Complete(t) => {
                    let mut out = json!({ "index": t.num_cosets() });
                    if table {
                        out["table"] = t.to_json();
                    }
                    Ok(Outcome::Ok(out))
                }
                Enumeration::Overflow => bail!(
                    "enumeration exceeded {} cosets; the index is unknown",
                    limits.max_cosets
                ),
            }
        }
        Command::Center { params, verify } => {
            let delta = center_word(&params);
            let mut out = json!({
                "group": params.name(),
                "delta": delta_word(&params).to_string(),
                "center": delta.to_string(),
                "center_word": delta,
            });
            if !verify {
                return Ok(Outcome::Ok(out));
            }
            let rep = verify_central_extension(&params, limits)?;
            out["verification"] = json!({
                "delta_central": decision_json(rep.delta_central),
                "phi_kills_delta": decision_json(rep.phi_kills_delta),
                "order_product_ok": decision_json(rep.order_product_ok),
                "order_w": rep.order_w,
                "order_delta": rep.order_delta,
                "order_w_plus": rep.order_w_plus,
            });
            let checks = [rep.delta_central, rep.phi_kills_delta, rep.order_product_ok];
            if checks.contains(&Decision::False) {
                Ok(Outcome::Failed(out))
            } else if checks.contains(&Decision::Unknown) {
                bail!("enumeration limits prevented a decision: {out}")
            } else {
                Ok(Outcome::Ok(out))
            }
        }
        Command::Classify { p1, p2 } => Ok(Outcome::Ok(json!({
            "isomorphic": reflection_isomorphic(&p1, &p2),
            "C1": column_multiset(&p1),
            "C2": column_multiset(&p2),
            "classes1": hyperplane_classes(&p1),
            "classes2": hyperplane_classes(&p2),
            "orders1": orders_multiset(&p1),
            "orders2": orders_multiset(&p2),
            "finite1": is_finite(&p1),
            "finite2": is_finite(&p2),
            "names": [shephard_todd_name(&p1), shephard_todd_name(&p2)],
        }))),
        Command::Iso { map, params, j } => iso(map, params, j, limits),
        Command::Rs {
            input,
            generator,
            modulus,
            simplify,
        } => {
            let pres = Presentation::from_json(&read_input(&input)?)?;
            let setup = RsSetup::new(pres, GenId::parse(&generator)?, modulus)?;
            let rs = subgroup_presentation(&setup, limits)?;
            let mut out: Value = serde_json::from_str(&rs.to_json())?;
            if simplify {
                let s = tietze_simplify(&rs.presentation, TietzeBudget::default());
                out["simplified"] = serde_json::from_str(&s.presentation.to_json())?;
                let elim: BTreeMap<String, Word> = s
                    .eliminated
                    .into_iter()
                    .map(|(g, w)| (g.to_string(), w))
                    .collect();
                out["eliminated"] = json!(elim);
                out["exhausted"] = json!(s.exhausted);
            }
            Ok(Outcome::Ok(out))
        }
        Command::Abelianize { group } => {
            let pres = load_group(&group)?;
            let factors: Vec<Value> = abelianize(&pres)
                .iter()
                .map(|d| serde_json::from_str(&d.to_string()).expect("integer literal"))
                .collect();
            Ok(Outcome::Ok(json!(factors)))
        }
        Command::Homcount { group, degree } => {
            let pres = load_group(&group)?;
            let count = hom_count(&pres, degree)?;
            Ok(Outcome::Ok(json!({ "degree": degree, "count": count })))
        }
        Command::Verify {
            suite: Suite::Table1 {
                max_order,
                family_cap,
            },
        } => {
            let cases = table1_cases(max_order, family_cap);
            let rows: Vec<Value> = cases
                .par_iter()
                .map(|case| {
                    let got = vcrg_presentation(&case.params)
                        .map(|p| group_order(&p, limits))
                        .unwrap_or(Order::Unknown);
                    json!({
                        "row": case.row,
                        "name": case.name,
                        "params": case.params.to_string(),
                        "expected": case.order,
                        "enumerated": order_json(got),
                        "pass": got == Order::Finite(case.order),
                    })
                })
                .collect();
            let failed = rows.iter().filter(|r| r["pass"] != json!(true)).count();
            let out = json!({ "cases": rows.len(), "failed": failed, "rows": rows });
            Ok(if failed == 0 {
                Outcome::Ok(out)
            } else {
                Outcome::Failed(out)
            })
        }
    }
}

fn iso(
    map: IsoMap,
    params: Option<VcrgParams>,
    j: Option<String>,
    limits: EnumerationLimits,
) -> anyhow::Result<Outcome> {
    let (gmap, label) = match map {
        IsoMap::NmSwap => {
            let p = params.ok_or_else(|| anyhow!("--params is required for nm-swap"))?;
            (nm_swap_images(&p)?, p.name())
        }
        IsoMap::ColumnSwap => {
            let (k, n, m) = parse_triple(j.as_deref().unwrap_or_default())?;
            (column_swap_map(k, n, m)?, format!("J({k},{m},{n}) -> J({k},{n},{m})"))
        }
    };
    let verdict = check_hom(&gmap, limits)?;
    let mut out = json!({ "source": label, "images": images_json(&gmap) });
    out["hom"] = verdict_json(&verdict);
    match verdict {
        HomVerdict::Verified => {}
        HomVerdict::Failed(_) => return Ok(Outcome::Failed(out)),
        HomVerdict::Unknown => bail!("target did not enumerate within limits: {out}"),
    }
    // Bijectivity: the images generate and both sides have the same order.
    let images: Vec<Word> = gmap.images.values().cloned().collect();
    let gen_index = match todd_coxeter(&gmap.target, &images, limits)? {
        Enumeration::Complete(t) => Order::Finite(t.num_cosets() as u64),
        Enumeration::Overflow => Order::Unknown,
    };
    let src = group_order(&gmap.source, limits);
    let dst = group_order(&gmap.target, limits);
    out["image_index"] = order_json(gen_index);
    out["source_order"] = order_json(src);
    out["target_order"] = order_json(dst);
    let bijective = gen_index == Order::Finite(1) && src == dst && src != Order::Unknown;
    out["bijective"] = json!(bijective);
    if gen_index == Order::Unknown || src == Order::Unknown {
        bail!("enumeration limits prevented a bijectivity check: {out}");
    }
    Ok(if bijective {
        Outcome::Ok(out)
    } else {
        Outcome::Failed(out)
    })
}
