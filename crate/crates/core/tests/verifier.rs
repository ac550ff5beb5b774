use smdiff::report::Status;
use smdiff::verifier::{run_all, run_checks, Config, CHECK_IDS};
use smdiff::Error;

fn with_jobs(jobs: usize) -> Config {
    Config { jobs, ..Config::default() }
}

#[test]
fn every_check_passes_in_id_order() {
    let reports = run_all(&with_jobs(4)).unwrap();
    let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(ids, CHECK_IDS);
    for r in &reports {
        assert_eq!(r.status, Status::Pass, "{}: {:#?}", r.check_id, r.notes);
        assert!(r.precision_bits <= 8192);
    }

    let single = run_checks(&["lemma_three", "two_dominant_case1", "all_dominant"], &with_jobs(1)).unwrap();
    for s in &single {
        let r = reports.iter().find(|r| r.check_id == s.check_id).unwrap();
        assert_eq!((&r.witnesses, r.candidate_count, &r.notes), (&s.witnesses, s.candidate_count, &s.notes));
    }
}

#[test]
fn bad_selection_is_rejected_before_running() {
    assert!(
        matches!(run_checks(&["conductor_bound", "nope"], &Config::default()), Err(Error::UnknownCheck(id)) if id == "nope")
    );
    let bad = Config { precision_bits: 4096, precision_cap: 1024, ..Config::default() };
    assert!(matches!(run_checks(&["conductor_bound"], &bad), Err(Error::InvalidConfig(_))));
}
