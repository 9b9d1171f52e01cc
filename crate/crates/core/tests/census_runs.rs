mod common;

use std::io::Cursor;

use comstruct::census::{
    run_census, CensusError, CensusRecord, CensusSource, CensusSummary, RecordStatus,
};
use comstruct::family::enumerate_members;
use comstruct::{emit_graph6, SolveOptions};

fn census(text: String, opts: &SolveOptions, workers: usize) -> (Vec<CensusRecord>, CensusSummary) {
    let mut records = Vec::new();
    let source = CensusSource::Graph6 {
        name: "input".into(),
        reader: Box::new(Cursor::new(text)),
    };
    let summary = run_census(source, opts, workers, |r| {
        records.push(r.clone());
        Ok(())
    })
    .unwrap();
    (records, summary)
}

fn generated(orders: Vec<usize>, opts: &SolveOptions) -> (Vec<CensusRecord>, CensusSummary) {
    let mut records = Vec::new();
    let summary = run_census(CensusSource::Generate { orders }, opts, 2, |r| {
        records.push(r.clone());
        Ok(())
    })
    .unwrap();
    (records, summary)
}

#[test]
fn order_ten_members_stand_out() {
    let mut lines: Vec<String> = enumerate_members(3)
        .unwrap()
        .iter()
        .map(|m| emit_graph6(&m.graph).unwrap())
        .collect();
    let mut rng = common::rng(10);
    for _ in 0..100 {
        lines.push(emit_graph6(&common::random_connected_graph(&mut rng, 10, 0.4)).unwrap());
    }
    let (records, summary) = census(lines.join("\n"), &SolveOptions::relaxed(), 4);
    assert_eq!(records.len(), 104);
    assert_eq!(summary.lacking_relaxed, vec![1, 2, 3, 4]);
    assert_eq!(summary.exceptions, vec![1, 2, 3, 4]);
    assert_eq!(summary.per_order[&10].lacking_relaxed, 4);
}

#[test]
fn order_four_strict() {
    let (records, summary) = generated(vec![4], &SolveOptions::strict());
    assert_eq!(records.len(), 6);
    let counts = summary.per_order[&4];
    assert_eq!(counts.total, 6);
    assert_eq!(counts.lacking_strict, 1);
    assert_eq!(counts.lacking_relaxed, 0);
    let star = records.iter().find(|r| !r.has_strict_2cs).unwrap();
    assert_eq!(star.edges, 3);
    assert_eq!(summary.exceptions, vec![star.id]);
}

#[test]
fn small_orders_match_oracle_table() {
    let (records, summary) = generated((1..=7).collect(), &SolveOptions::relaxed().connected());
    assert!(summary
        .exceptions
        .iter()
        .all(|&id| records[id as usize].n == 1));
    let table = [
        (2, [1, 0, 1, 0, 1]),
        (3, [2, 0, 2, 0, 2]),
        (4, [1, 0, 1, 0, 1]),
        (5, [1, 0, 1, 0, 21]),
        (6, [1, 0, 1, 0, 47]),
        (7, [1, 0, 1, 0, 853]),
    ];
    for (n, want) in table {
        let c = summary.per_order[&n];
        let got = [
            c.lacking_strict,
            c.lacking_relaxed,
            c.lacking_connected_strict,
            c.lacking_connected_relaxed,
            c.lacking_balanced,
        ];
        assert_eq!(got, want, "order {n}");
    }
}

#[test]
fn lacking_verdicts_recheck_naively() {
    let (records, _) = generated((2..=7).collect(), &SolveOptions::strict());
    for r in records.iter().filter(|r| !r.has_strict_2cs) {
        let g = comstruct::parse_graph6(r.graph6.as_deref().unwrap()).unwrap();
        assert!(!common::naive_flags(&g).strict);
    }
}

#[test]
fn parse_errors_do_not_stop_the_run() {
    let text = "C~\nnot graph6\n\nA_\nC\n".to_string();
    let (records, summary) = census(text, &SolveOptions::strict(), 1);
    let status: Vec<_> = records.iter().map(|r| (r.id, r.status)).collect();
    assert_eq!(
        status,
        vec![
            (1, RecordStatus::Ok),
            (2, RecordStatus::ParseError),
            (4, RecordStatus::Ok),
            (5, RecordStatus::ParseError),
        ]
    );
    assert_eq!(summary.parse_errors, 2);
    assert_eq!(summary.graphs, 2);
    assert!(records[1].error.is_some());
}

#[test]
fn budget_marks_records() {
    let text = emit_graph6(&comstruct::named::planar_counterexample()).unwrap();
    let (records, summary) = census(text, &SolveOptions::relaxed().with_budget(10), 1);
    assert_eq!(records[0].status, RecordStatus::BudgetExceeded);
    assert_eq!(records[0].partitions_examined, 10);
    assert_eq!(summary.budget_exceeded, 1);
}

#[test]
fn summaries_ignore_worker_count() {
    let opts = SolveOptions::strict().balanced();
    let text = include_str!("data/connected6.g6").to_string();
    let (r1, s1) = census(text.clone(), &opts, 1);
    let (r4, s4) = census(text, &opts, 4);
    assert_eq!(r1, r4);
    assert_eq!(
        serde_json::to_string(&s1).unwrap(),
        serde_json::to_string(&s4).unwrap()
    );
    assert_eq!(s1.per_order[&6].exceptions, 47);
}

#[test]
fn generator_rejects_bad_orders() {
    let run = |orders| {
        run_census(
            CensusSource::Generate { orders },
            &SolveOptions::strict(),
            1,
            |_| Ok(()),
        )
    };
    assert!(matches!(
        run(vec![8]),
        Err(CensusError::UnsupportedOrder { n: 8, .. })
    ));
    assert!(matches!(
        run(vec![4, 4]),
        Err(CensusError::DuplicateOrder(4))
    ));
}

#[test]
fn csv_rows_line_up_with_header() {
    let (records, _) = generated(vec![4], &SolveOptions::strict());
    let columns = CensusRecord::CSV_HEADER.split(',').count();
    for r in &records {
        assert_eq!(r.to_csv_row().split(',').count(), columns);
    }
}
