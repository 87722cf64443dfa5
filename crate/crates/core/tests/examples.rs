macro_rules! example {
    ($module:ident, $file:literal, $test:ident, $check:expr) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            let out = $module::run_example().expect(concat!($file, " should run"));
            let check: fn(&str) -> bool = $check;
            assert!(check(&out), "unexpected output:\n{}", out);
        }
    };
}

example!(worked, "worked_example.rs", worked_example_runs, |o| {
    o.contains("MDD = 11 / 6 = 1.8333") && o.contains("MHD = 10 / 6 = 1.6667")
});
example!(ingest, "ingest_formats.rs", ingest_formats_runs, |o| {
    o.contains("round trip preserved: true") && o.contains("1 accepted, 2 rejected")
});
example!(dists, "distributions.rs", distributions_runs, |o| o.contains("DD pooled") && o.contains("HD pooled"));
example!(trend, "trend_and_correlation.rs", trend_and_correlation_runs, |o| o.contains("rho") && !o.contains("between SL 2"));
example!(valency, "valency_regression.rs", valency_regression_runs, |o| {
    o.contains("lexicon mode") && o.contains("root-out-degree mode")
});
example!(baseline, "random_baseline.rs", random_baseline_runs, |o| {
    o.contains("chain  MDD 1.0000 MHD 5.0000") && o.contains("max root out-degree 2")
});
example!(report, "full_report.rs", full_report_runs, |o| o.contains("report.json"));
