use normineq::harness::{replay, run_suites, SuiteId, TrialConfig, TrialKey};

#[test]
fn fingerprints_replay_every_record() {
    let config = TrialConfig { trials: 6, ..TrialConfig::with_suites(&[SuiteId::CsBasic, SuiteId::Thm33, SuiteId::Cor44]) };
    let report = run_suites(&config).unwrap();
    for suite in &report.suites {
        for rec in suite.records.iter().step_by(7) {
            let again = replay(&rec.fingerprint, &config).unwrap().verdict;
            assert_eq!(again.links, rec.links, "{}", rec.fingerprint);
            assert_eq!(again.pass, rec.pass);
            assert_eq!(rec.fingerprint.parse::<TrialKey>().unwrap().to_string(), rec.fingerprint);
        }
    }
}

#[test]
fn replay_reproduces_failures_under_a_negligible_tolerance() {
    // Several chains are tight, so rounding alone makes some links cross.
    let config = TrialConfig {
        trials: 200,
        tol_rel: 1e-300,
        suites: vec![SuiteId::CsBasic, SuiteId::Thm33],
        ..TrialConfig::default()
    };
    let report = run_suites(&config).unwrap();
    let failures: Vec<_> = report.suites.iter().flat_map(|s| &s.failures).collect();
    assert!(!failures.is_empty());
    for rec in failures.iter().take(10) {
        let again = replay(&rec.fingerprint, &config).unwrap().verdict;
        assert!(!again.pass, "{}", rec.fingerprint);
        assert_eq!(again.links, rec.links);
    }
}

#[test]
fn malformed_fingerprints_are_rejected() {
    let config = TrialConfig::default();
    assert!(replay("cs-basic/seed=0", &config).is_err());
    assert!(replay("no-such-suite/seed=0/trial=0/n=1/r=1/norm=trace", &config).is_err());
}
