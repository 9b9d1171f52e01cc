use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use comstruct::census::{run_census, CensusRecord, CensusSource, CensusSummary};
use comstruct::family::{
    build_member, enumerate_members, verify_family_no_2cs, FamilyMember, FamilyParams,
};
use comstruct::{
    check_partition, emit_graph6, find_2cs, greedy_cut_heuristic, tree_connected_2cs, Bipartition,
    Failure, Mode, Outcome, Partition, SolveOptions, SolveResult, Verdict,
};
use serde_json::{json, Value};

use crate::input::{parse_orders, parse_vertex_list, Format, GraphInput};
use crate::{CensusArgs, CliError, ParamArgs};

fn input_err(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn split_json(bp: &Bipartition) -> Value {
    json!({
        "partition": bp.to_string(),
        "a": bp.a().iter().collect::<Vec<_>>(),
        "b": bp.b().iter().collect::<Vec<_>>(),
    })
}

fn describe(f: &Failure) -> String {
    match f {
        Failure::SingletonPart { part } => format!("singleton part={part}"),
        Failure::DisconnectedPart { part } => format!("disconnected part={part}"),
        Failure::Unsatisfied(w) => format!(
            "witness={} part={} other={} lhs={} rhs={}",
            w.vertex, w.home, w.other, w.lhs, w.rhs
        ),
    }
}

fn failure_json(v: &Verdict) -> Value {
    match v {
        Verdict::Valid => Value::Null,
        Verdict::Invalid(f) => serde_json::to_value(f).expect("failure serializes"),
    }
}

pub fn check(
    input: &GraphInput,
    text: &str,
    mode: Mode,
    connected: bool,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let p = Partition::parse(text, g.n()).map_err(input_err)?;
    let verdict = check_partition(&g, &p, mode, connected).map_err(input_err)?;
    if json {
        let out = json!({
            "valid": verdict.is_valid(),
            "mode": mode,
            "connected": connected,
            "partition": p.to_string(),
            "failure": failure_json(&verdict),
        });
        say!("{out}");
    } else {
        match &verdict {
            Verdict::Valid => say!("VALID"),
            Verdict::Invalid(f) => say!("INVALID {}", describe(f)),
        }
    }
    Ok(if verdict.is_valid() { 0 } else { 1 })
}

fn outcome_code(o: &Outcome) -> u8 {
    match o {
        Outcome::Found(_) => 0,
        Outcome::NotFound => 1,
        Outcome::BudgetExceeded => 3,
    }
}

fn report_search(res: &SolveResult, opts: Option<&SolveOptions>, json: bool) -> u8 {
    if json {
        let outcome = match res.outcome {
            Outcome::Found(_) => "found",
            Outcome::NotFound => "none",
            Outcome::BudgetExceeded => "budget_exceeded",
        };
        let mut out = json!({
            "outcome": outcome,
            "split": res.found().map(split_json),
            "examined": res.partitions_examined,
        });
        if let Some(opts) = opts {
            out["options"] = serde_json::to_value(opts).expect("options serialize");
        }
        if let Some(all) = &res.all_solutions {
            out["all"] = all.iter().map(split_json).collect();
        }
        say!("{out}");
    } else {
        match (&res.outcome, &res.all_solutions) {
            (Outcome::Found(_), Some(all)) => say!("FOUND {} splits", all.len()),
            (Outcome::Found(bp), None) => say!("FOUND {bp}"),
            (Outcome::NotFound, _) => say!("NONE"),
            (Outcome::BudgetExceeded, _) => say!("BUDGET_EXCEEDED"),
        }
        if let Some(all) = &res.all_solutions {
            for bp in all {
                say!("{bp}");
            }
        }
        say!("examined {}", res.partitions_examined);
    }
    outcome_code(&res.outcome)
}

pub fn solve(input: &GraphInput, opts: &SolveOptions, json: bool) -> Result<u8, CliError> {
    let g = input.load()?;
    let res = find_2cs(&g, opts).map_err(input_err)?;
    Ok(report_search(&res, Some(opts), json))
}

pub fn tree(input: &GraphInput, json: bool) -> Result<u8, CliError> {
    let g = input.load()?;
    let res = tree_connected_2cs(&g).map_err(input_err)?;
    Ok(report_search(&res, None, json))
}

pub fn greedy(
    input: &GraphInput,
    seed: &str,
    opts: &SolveOptions,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let a = parse_vertex_list(seed, g.n())?;
    let res = greedy_cut_heuristic(&g, a, opts).map_err(input_err)?;
    Ok(report_search(&res, Some(opts), json))
}

fn full_params(p: &ParamArgs) -> Result<Option<FamilyParams>, CliError> {
    match (p.dx, p.dy, p.o1, p.o2) {
        (Some(dx), Some(dy), Some(o1), Some(o2)) => {
            Ok(Some(FamilyParams::new(p.k, dx, dy, o1, o2)))
        }
        (None, None, None, None) => Ok(None),
        _ => Err(CliError::Input(
            "give all of --dx --dy --o1 --o2 or none of them".into(),
        )),
    }
}

fn member_json(m: &FamilyMember) -> Result<Value, CliError> {
    Ok(json!({
        "params": m.params,
        "graph6": emit_graph6(&m.graph).map_err(input_err)?,
        "edges": m.graph.edges(),
        "roles": m.role_map(),
    }))
}

fn print_member(m: &FamilyMember, format: Format, json: bool) -> Result<(), CliError> {
    if json {
        say!("{}", member_json(m)?);
        return Ok(());
    }
    match format {
        Format::Graph6 => say!("{}", emit_graph6(&m.graph).map_err(input_err)?),
        Format::Edges => {
            let _ = io::stdout()
                .lock()
                .write_all(m.graph.to_edge_list().as_bytes());
        }
    }
    say!(
        "{}",
        serde_json::to_string(&m.role_map()).expect("roles serialize")
    );
    Ok(())
}

pub fn family_build(p: &ParamArgs, format: Format, json: bool) -> Result<u8, CliError> {
    let params =
        full_params(p)?.ok_or_else(|| CliError::Input("build needs --dx --dy --o1 --o2".into()))?;
    let m = build_member(params).map_err(input_err)?;
    print_member(&m, format, json)?;
    Ok(0)
}

pub fn family_enumerate(k: usize, format: Format, json: bool) -> Result<u8, CliError> {
    let members = enumerate_members(k).map_err(input_err)?;
    for m in &members {
        if !json {
            say!("# {}", m.params);
        }
        print_member(m, format, json)?;
    }
    if !json {
        say!("# {} members", members.len());
    }
    Ok(0)
}

pub fn family_verify(p: &ParamArgs, json: bool) -> Result<u8, CliError> {
    let members = match full_params(p)? {
        Some(params) => vec![build_member(params).map_err(input_err)?],
        None => enumerate_members(p.k).map_err(input_err)?,
    };
    let mut found = 0;
    for m in &members {
        let report = verify_family_no_2cs(m).map_err(input_err)?;
        if !report.holds() {
            found += 1;
        }
        if json {
            let cases: Vec<Value> = report
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label,
                        "b": c.b.iter().collect::<Vec<_>>(),
                        "valid": c.verdict.is_valid(),
                        "failure": failure_json(&c.verdict),
                    })
                })
                .collect();
            let out = json!({
                "params": report.params,
                "outcome": if report.holds() { "none" } else { "found" },
                "split": match &report.outcome {
                    Outcome::Found(bp) => split_json(bp),
                    _ => Value::Null,
                },
                "examined": report.partitions_examined,
                "cases": cases,
            });
            say!("{out}");
        } else {
            match &report.outcome {
                Outcome::Found(bp) => say!("{}: FOUND {bp}", report.params),
                _ => say!(
                    "{}: NONE ({} splits examined)",
                    report.params,
                    report.partitions_examined
                ),
            }
            for c in &report.cases {
                let verdict = match &c.verdict {
                    Verdict::Valid => "VALID".to_string(),
                    Verdict::Invalid(f) => format!("INVALID {}", describe(f)),
                };
                say!("  {}: {verdict}", c.label);
            }
        }
    }
    if !json {
        say!("{} members, {found} with a relaxed split", members.len());
    }
    Ok(if found == 0 { 0 } else { 1 })
}

fn variant_name(opts: &SolveOptions) -> String {
    let mut name = opts.mode.to_string();
    if opts.require_connected {
        name.push_str(" connected");
    }
    if opts.require_balanced {
        name.push_str(" balanced");
    }
    name
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn census(args: &CensusArgs) -> Result<u8, CliError> {
    let mut opts = SolveOptions::new(if args.relaxed {
        Mode::Relaxed
    } else {
        Mode::Strict
    });
    opts.require_connected = args.connected_required;
    opts.require_balanced = args.balanced;
    opts.budget = args.budget;
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    let source = match (&args.input, &args.generate) {
        (Some(path), _) => {
            let reader: Box<dyn BufRead> = if path == Path::new("-") {
                Box::new(BufReader::new(io::stdin()))
            } else {
                let f = File::open(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                Box::new(BufReader::new(f))
            };
            CensusSource::Graph6 {
                name: path.display().to_string(),
                reader,
            }
        }
        (None, Some(list)) => CensusSource::Generate {
            orders: parse_orders(list)?,
        },
        (None, None) => {
            return Err(CliError::Input(
                "give --in FILE or --generate ORDERS".into(),
            ))
        }
    };

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(create(path)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut csv = args.csv.as_deref().map(create).transpose()?;
    if let Some(w) = csv.as_mut() {
        writeln!(w, "{}", CensusRecord::CSV_HEADER).map_err(io_err)?;
    }
    let summary = run_census(source, &opts, workers, |rec| {
        serde_json::to_writer(&mut out, rec)?;
        out.write_all(b"\n")?;
        if let Some(w) = csv.as_mut() {
            writeln!(w, "{}", rec.to_csv_row())?;
        }
        Ok(())
    })
    .map_err(|e| CliError::Io(e.to_string()))?;
    out.flush().map_err(io_err)?;
    if let Some(w) = csv.as_mut() {
        w.flush().map_err(io_err)?;
    }

    match &args.summary {
        Some(path) => {
            let mut w = create(path)?;
            serde_json::to_writer_pretty(&mut w, &summary)
                .map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w).and_then(|_| w.flush()).map_err(io_err)?;
        }
        None => print_text_summary(&summary),
    }
    let ids: Vec<String> = summary.exceptions.iter().map(|i| i.to_string()).collect();
    eprintln!(
        "exceptions lacking a {} 2CS: {}{}",
        variant_name(&opts),
        ids.len(),
        if ids.is_empty() {
            String::new()
        } else {
            format!(" [{}]", ids.join(" "))
        }
    );
    Ok(0)
}

fn print_text_summary(s: &CensusSummary) {
    eprintln!(
        "{}: {} graphs, {} parse errors, {} unsupported, {} over budget, {:.2?}",
        s.config.source, s.graphs, s.parse_errors, s.unsupported, s.budget_exceeded, s.wall_time
    );
    eprintln!("order  graphs  -strict  -relaxed  -conn.strict  -conn.relaxed  -balanced");
    for (n, c) in &s.per_order {
        eprintln!(
            "{n:>5}  {:>6}  {:>7}  {:>8}  {:>12}  {:>13}  {:>9}",
            c.total,
            c.lacking_strict,
            c.lacking_relaxed,
            c.lacking_connected_strict,
            c.lacking_connected_relaxed,
            c.lacking_balanced
        );
    }
}
