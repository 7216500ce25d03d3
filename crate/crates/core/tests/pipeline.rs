//! The library pipeline end to end: Java sources are parsed into facts,
//! smell rules turn facts into reports, reports join labels into a
//! dataset, and every classifier trains, persists, and evaluates on a
//! held-out split.

use std::path::PathBuf;

use smellsift_core::eval::{
    evaluate, rank_features, smell_count_distribution, DistributionRow, EvalReport,
};
use smellsift_core::facts::{
    build_corpus_index, extract_class_facts, parse_source_text, resolve_production_class,
    SourceUnit,
};
use smellsift_core::features::{
    assemble_dataset, balance_dataset, split_train_test, Dataset, Label, LabelRecord,
    SplitOptions,
};
use smellsift_core::learners::{deserialize_model, serialize_model, train, Algorithm, ModelSpec};
use smellsift_core::smells::{build_smell_reports, DetectOptions, SmellKind, SmellReport};

fn production_source(class: &str) -> String {
    format!(
        "package demo;\n\npublic class {class} {{\n    public int reading() {{\n        return 3;\n    }}\n}}\n"
    )
}

fn test_source(class: &str, sleepy: bool) -> String {
    let sleep_line = if sleepy { "        Thread.sleep(25L);\n" } else { "" };
    format!(
        "package demo;\n\nimport org.junit.Test;\n\nimport static org.junit.Assert.assertEquals;\n\n\
public class {class}Test {{\n    @Test\n    public void checksReading() throws InterruptedException {{\n\
        {class} subject = new {class}();\n        int expected = 3;\n{sleep_line}\
        int actual = subject.reading();\n        assertEquals(expected, actual);\n    }}\n}}\n"
    )
}

/// Two projects, twelve widgets each; even-numbered widget tests sleep and
/// are labeled flaky. Returns the smell reports and matching label rows.
fn detect_corpus() -> (Vec<SmellReport>, Vec<LabelRecord>) {
    let projects = ["app", "lib"];
    let mut production_units: Vec<SourceUnit> = Vec::new();
    let mut class_names = Vec::new();
    for project in projects {
        for i in 0..12 {
            let class = format!("{}Widget{i}", project.to_uppercase());
            let path = PathBuf::from(format!("{project}/{class}.java"));
            production_units
                .push(parse_source_text(&path, &production_source(&class)).unwrap());
            class_names.push((project, class, i % 2 == 0));
        }
    }
    let index = build_corpus_index(&production_units);

    let mut reports = Vec::new();
    let mut labels = Vec::new();
    for (project, class, sleepy) in &class_names {
        let path = PathBuf::from(format!("{project}/{class}Test.java"));
        let unit = parse_source_text(&path, &test_source(class, *sleepy)).unwrap();
        let facts = extract_class_facts(&unit);
        assert!(facts.is_test_class, "{class}Test must be recognized as a test class");
        let production = resolve_production_class(&facts.unit.class_name, &index);
        assert!(production.resolved, "{class}Test must resolve its production class");
        reports.extend(build_smell_reports(
            project,
            &facts,
            &production,
            &DetectOptions::default(),
        ));
        labels.push(LabelRecord {
            project: project.to_string(),
            test_id: format!("{class}Test#checksReading"),
            label: if *sleepy { Label::Flaky } else { Label::NonFlaky },
        });
    }
    (reports, labels)
}

#[test]
fn detection_to_training_round_trip() {
    let (reports, labels) = detect_corpus();
    assert_eq!(reports.len(), 24);
    for report in &reports {
        assert!(report.skipped_rules.is_empty(), "{}: no rule may be skipped", report.test_id);
        let sleepy = report.presence.contains(SmellKind::SleepyTest);
        assert_eq!(report.smells_count, usize::from(sleepy), "{}", report.test_id);
    }
    assert_eq!(
        reports.iter().filter(|r| r.presence.contains(SmellKind::SleepyTest)).count(),
        12
    );

    let (dataset, diagnostics) =
        assemble_dataset::<f64>(&reports, &labels, false, "pipeline").unwrap();
    assert_eq!(diagnostics.matched, 24);
    assert!(diagnostics.unmatched_reports.is_empty());
    assert!(diagnostics.unmatched_labels.is_empty());
    dataset.validate().unwrap();
    assert_eq!(dataset.class_counts(), (12, 12));

    // Already balanced, so balancing only stamps the seed.
    let balanced = balance_dataset(&dataset, 7).unwrap();
    assert_eq!(balanced.examples, dataset.examples);
    assert_eq!(balanced.provenance.seed, Some(7));

    let (train_set, test_set) = split_train_test(
        &balanced,
        SplitOptions { train_fraction: 0.8, seed: 7, stratify: true },
    )
    .unwrap();
    assert_eq!(train_set.class_counts(), (10, 10));
    assert_eq!(test_set.class_counts(), (2, 2));

    // The sleepy smell equals the label, so every learner must separate
    // the held-out examples perfectly — and survive a save/load cycle.
    for algorithm in Algorithm::ALL {
        let spec = ModelSpec::with_defaults(algorithm, 7);
        let model = train(&spec, &train_set).unwrap();
        let report = evaluate(&model, &test_set).unwrap();
        let m = report.matrix;
        assert_eq!(
            (m.true_positives, m.true_negatives, m.false_positives, m.false_negatives),
            (2, 2, 0, 0),
            "{} must classify the held-out set perfectly",
            algorithm.id()
        );
        assert_eq!(report.f1, 1.0, "{}", algorithm.id());
        assert_eq!(report.auc, Some(1.0), "{}", algorithm.id());

        let bytes = serialize_model(&model).unwrap();
        let restored = deserialize_model::<f64>(&bytes).unwrap();
        assert_eq!(serialize_model(&restored).unwrap(), bytes, "{}", algorithm.id());
        let restored_report: EvalReport = evaluate(&restored, &test_set).unwrap();
        assert_eq!(restored_report, report, "{}", algorithm.id());
    }
}

#[test]
fn ranking_and_distribution_read_off_the_corpus() {
    let (reports, labels) = detect_corpus();
    let (dataset, _) = assemble_dataset::<f64>(&reports, &labels, false, "pipeline").unwrap();

    let gains = rank_features(&dataset);
    assert_eq!(gains.len(), dataset.schema.len());
    let top = &gains[0];
    assert_eq!(top.feature, "sleepy_test");
    assert_eq!(top.information_gain, 1.0);
    assert_eq!((top.affected_total, top.affected_flaky, top.affected_non_flaky), (12, 12, 0));
    assert_eq!((top.percent_flaky, top.percent_non_flaky), (1.0, 0.0));

    let distribution = smell_count_distribution(&dataset);
    assert_eq!(
        distribution,
        vec![
            DistributionRow {
                smells_count: 0,
                non_flaky: 12,
                non_flaky_percent: 1.0,
                flaky: 0,
                flaky_percent: 0.0,
            },
            DistributionRow {
                smells_count: 1,
                non_flaky: 0,
                non_flaky_percent: 0.0,
                flaky: 12,
                flaky_percent: 1.0,
            },
        ]
    );
}

#[test]
fn pipeline_runs_in_f32_too() {
    let (reports, labels) = detect_corpus();
    let (dataset, _): (Dataset<f32>, _) =
        assemble_dataset(&reports, &labels, false, "pipeline-f32").unwrap();
    dataset.validate().unwrap();

    let (train_set, test_set) = split_train_test(
        &dataset,
        SplitOptions { train_fraction: 0.8, seed: 7, stratify: true },
    )
    .unwrap();
    let spec = ModelSpec::with_defaults(Algorithm::LogisticRegression, 7);
    let model = train(&spec, &train_set).unwrap();
    let report = evaluate(&model, &test_set).unwrap();
    assert_eq!(report.f1, 1.0);
}
