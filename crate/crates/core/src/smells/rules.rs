//! The 19 detection rules, evaluated against fact tables.
//!
//! Every detector is a pure function of the facts it declares; Eager Test
//! and Lazy Test additionally need the resolved production class and are
//! skipped (recorded, evaluated as absent) when resolution failed.

use std::collections::{BTreeMap, BTreeSet};

use crate::facts::{CallSite, ProductionFacts, TestClassFacts, TestMethodFacts};
use crate::features::TestId;

use super::{FindingScope, SmellFinding, SmellKind, SmellReport, SmellSet};

/// Default executable-statement threshold for Verbose Test.
pub const DEFAULT_VERBOSE_THRESHOLD: usize = 123;

/// Default Mystery Guest type set: file and database classes.
pub const DEFAULT_MYSTERY_GUEST_TYPES: &[&str] = &[
    "File",
    "FileReader",
    "FileWriter",
    "FileInputStream",
    "FileOutputStream",
    "RandomAccessFile",
    "Connection",
    "Statement",
    "PreparedStatement",
    "ResultSet",
];

const FILE_CHECK_METHODS: &[&str] = &["exists", "isFile", "notExists"];

/// Tunable rule parameters.
#[derive(Debug, Clone)]
pub struct DetectOptions {
    pub verbose_threshold: usize,
    pub mystery_guest_types: BTreeSet<String>,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            verbose_threshold: DEFAULT_VERBOSE_THRESHOLD,
            mystery_guest_types: DEFAULT_MYSTERY_GUEST_TYPES
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

/// More than one assertion: which failure fired becomes ambiguous.
pub fn detect_assertion_roulette(m: &TestMethodFacts) -> bool {
    m.assertion_calls.len() >= 2
}

/// Any control-flow statement (if/switch/ternary/for/foreach/while).
pub fn detect_conditional_test_logic(m: &TestMethodFacts) -> bool {
    m.control_flow_counts.total() > 0
}

/// The test class declares an explicit constructor (any arity).
pub fn detect_constructor_initialization(c: &TestClassFacts) -> bool {
    c.declares_constructor
}

/// IDE-generated default test classes, matched exactly and case-sensitively.
pub fn detect_default_test(c: &TestClassFacts) -> bool {
    c.class_name == "ExampleUnitTest" || c.class_name == "ExampleInstrumentedTest"
}

/// Two assertions with the same method name and identical normalized
/// argument token sequences.
pub fn detect_duplicate_assert(m: &TestMethodFacts) -> bool {
    !duplicate_assert_lines(m).is_empty()
}

fn duplicate_assert_lines(m: &TestMethodFacts) -> Vec<usize> {
    let mut seen: BTreeMap<(&str, &[String]), usize> = BTreeMap::new();
    let mut lines = Vec::new();
    for call in &m.assertion_calls {
        let key = (call.method_name.as_str(), call.argument_tokens.as_slice());
        if let Some(first_line) = seen.get(&key) {
            if lines.is_empty() {
                lines.push(*first_line);
            }
            lines.push(call.line);
        } else {
            seen.insert(key, call.line);
        }
    }
    lines
}

/// The method exercises ≥ 2 distinct production methods. `None` when the
/// production class is unresolved (rule skipped).
pub fn detect_eager_test(m: &TestMethodFacts, p: &ProductionFacts) -> Option<bool> {
    if !p.resolved {
        return None;
    }
    let distinct: BTreeSet<&str> =
        m.production_calls(p).iter().map(|c| c.method_name.as_str()).collect();
    Some(distinct.len() >= 2)
}

/// No executable statement at all.
pub fn detect_empty_test(m: &TestMethodFacts) -> bool {
    m.executable_statement_count == 0
}

/// setUp initializes fields that at least one test method never uses.
pub fn detect_general_fixture(c: &TestClassFacts) -> bool {
    !c.setup_fields.is_empty()
        && c.methods
            .iter()
            .any(|m| c.setup_fields.iter().any(|f| !m.referenced_names.contains(f)))
}

/// `@Ignore` on the method or on the class.
pub fn detect_ignored_test(c: &TestClassFacts, m: &TestMethodFacts) -> bool {
    m.has_annotation("Ignore") || c.has_class_annotation("Ignore")
}

/// Test methods that share a called production method with another test
/// method of the class. `None` when the production class is unresolved.
pub fn detect_lazy_test<'c>(
    c: &'c TestClassFacts,
    p: &ProductionFacts,
) -> Option<BTreeSet<&'c str>> {
    if !p.resolved {
        return None;
    }
    let per_method: Vec<(&str, BTreeSet<&str>)> = c
        .methods
        .iter()
        .map(|m| {
            let names: BTreeSet<&str> =
                m.production_calls(p).iter().map(|c| c.method_name.as_str()).collect();
            (m.name.as_str(), names)
        })
        .collect();

    let mut users: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, names) in &per_method {
        for name in names {
            *users.entry(name).or_insert(0) += 1;
        }
    }

    Some(
        per_method
            .iter()
            .filter(|(_, names)| names.iter().any(|n| users[n] >= 2))
            .map(|(m, _)| *m)
            .collect(),
    )
}

/// An assertion argument is a bare numeric literal.
pub fn detect_magic_number_test(m: &TestMethodFacts) -> bool {
    m.numeric_literal_assert_args >= 1
}

/// Instantiates a file or database class (the configured guest set).
pub fn detect_mystery_guest(m: &TestMethodFacts, options: &DetectOptions) -> bool {
    m.instantiations.iter().any(|i| options.mystery_guest_types.contains(&i.type_name))
}

/// Calls print/println/printf/write on `System.*`.
pub fn detect_redundant_print(m: &TestMethodFacts) -> bool {
    !m.print_calls.is_empty()
}

/// Expected and actual arguments are the same, or a constant tautology
/// (`assertTrue(true)` / `assertFalse(false)`).
pub fn detect_redundant_assertion(m: &TestMethodFacts) -> bool {
    m.assertion_calls.iter().any(is_redundant_assertion)
}

fn is_redundant_assertion(call: &CallSite) -> bool {
    match call.argument_tokens.as_slice() {
        [a, b] => a == b,
        [single] => {
            (call.method_name == "assertTrue" && single == "true")
                || (call.method_name == "assertFalse" && single == "false")
        }
        _ => false,
    }
}

/// A `File`-typed local or parameter is used without any
/// exists()/isFile()/notExists() check on it.
pub fn detect_resource_optimism(m: &TestMethodFacts) -> bool {
    m.file_typed_locals.iter().any(|var| {
        !m.file_api_calls.iter().any(|c| {
            c.receiver.as_deref() == Some(var.as_str())
                && FILE_CHECK_METHODS.contains(&c.method_name.as_str())
        })
    })
}

/// Invokes `toString()` anywhere in the method.
pub fn detect_sensitive_equality(m: &TestMethodFacts) -> bool {
    !m.to_string_calls.is_empty()
}

/// Invokes `Thread.sleep(...)`.
pub fn detect_sleepy_test(m: &TestMethodFacts) -> bool {
    !m.sleep_calls.is_empty()
}

/// No assertion and no `@Test(expected = ...)` parameter.
pub fn detect_unknown_test(m: &TestMethodFacts) -> bool {
    m.assertion_calls.is_empty() && !m.has_expected_param()
}

/// More executable statements than the configured threshold.
pub fn detect_verbose_test(m: &TestMethodFacts, options: &DetectOptions) -> bool {
    m.executable_statement_count > options.verbose_threshold
}

/// Evaluates all 19 rules for every test method of a class.
///
/// Class-scoped findings (Constructor Initialization, Default Test,
/// General Fixture, `@Ignore` on the class) mark every test method.
/// When the production class is unresolved, Eager/Lazy Test are recorded
/// in `skipped_rules` and evaluated as absent so downstream feature
/// vectors stay total.
pub fn build_smell_reports(
    project: &str,
    class: &TestClassFacts,
    production: &ProductionFacts,
    options: &DetectOptions,
) -> Vec<SmellReport> {
    let ctor_init = detect_constructor_initialization(class);
    let default_test = detect_default_test(class);
    let general_fixture = detect_general_fixture(class);
    let lazy = detect_lazy_test(class, production);

    class
        .methods
        .iter()
        .map(|m| {
            let test_id = TestId {
                project: project.to_string(),
                class_name: class.class_name.clone(),
                method_name: m.name.clone(),
            };
            let mut presence = SmellSet::new();
            let mut findings = Vec::new();
            let mut skipped_rules = Vec::new();

            let method_finding = |presence: &mut SmellSet,
                                      findings: &mut Vec<SmellFinding>,
                                      kind: SmellKind,
                                      lines: Vec<usize>| {
                presence.insert(kind);
                findings.push(SmellFinding {
                    kind,
                    test_id: test_id.clone(),
                    evidence_lines: if lines.is_empty() { vec![m.start_line] } else { lines },
                    scope: FindingScope::Method,
                });
            };
            let class_finding =
                |presence: &mut SmellSet, findings: &mut Vec<SmellFinding>, kind: SmellKind| {
                    presence.insert(kind);
                    findings.push(SmellFinding {
                        kind,
                        test_id: test_id.clone(),
                        evidence_lines: Vec::new(),
                        scope: FindingScope::Class,
                    });
                };

            if detect_assertion_roulette(m) {
                let lines = m.assertion_calls.iter().map(|c| c.line).collect();
                method_finding(&mut presence, &mut findings, SmellKind::AssertionRoulette, lines);
            }
            if detect_conditional_test_logic(m) {
                method_finding(
                    &mut presence,
                    &mut findings,
                    SmellKind::ConditionalTestLogic,
                    Vec::new(),
                );
            }
            if ctor_init {
                class_finding(&mut presence, &mut findings, SmellKind::ConstructorInitialization);
            }
            if default_test {
                class_finding(&mut presence, &mut findings, SmellKind::DefaultTest);
            }
            if detect_duplicate_assert(m) {
                method_finding(
                    &mut presence,
                    &mut findings,
                    SmellKind::DuplicateAssert,
                    duplicate_assert_lines(m),
                );
            }
            match detect_eager_test(m, production) {
                Some(true) => {
                    let lines = m.production_calls(production).iter().map(|c| c.line).collect();
                    method_finding(&mut presence, &mut findings, SmellKind::EagerTest, lines);
                }
                Some(false) => {}
                None => skipped_rules.push(SmellKind::EagerTest),
            }
            if detect_empty_test(m) {
                method_finding(&mut presence, &mut findings, SmellKind::EmptyTest, Vec::new());
            }
            if general_fixture {
                class_finding(&mut presence, &mut findings, SmellKind::GeneralFixture);
            }
            if detect_ignored_test(class, m) {
                if m.has_annotation("Ignore") {
                    method_finding(
                        &mut presence,
                        &mut findings,
                        SmellKind::IgnoredTest,
                        Vec::new(),
                    );
                } else {
                    class_finding(&mut presence, &mut findings, SmellKind::IgnoredTest);
                }
            }
            match &lazy {
                Some(flagged) => {
                    if flagged.contains(m.name.as_str()) {
                        let lines =
                            m.production_calls(production).iter().map(|c| c.line).collect();
                        method_finding(&mut presence, &mut findings, SmellKind::LazyTest, lines);
                    }
                }
                None => skipped_rules.push(SmellKind::LazyTest),
            }
            if detect_magic_number_test(m) {
                let lines = m
                    .assertion_calls
                    .iter()
                    .filter(|c| c.argument_tokens.iter().any(|a| is_numeric_literal_arg(a)))
                    .map(|c| c.line)
                    .collect();
                method_finding(&mut presence, &mut findings, SmellKind::MagicNumberTest, lines);
            }
            if detect_mystery_guest(m, options) {
                let lines = m
                    .instantiations
                    .iter()
                    .filter(|i| options.mystery_guest_types.contains(&i.type_name))
                    .map(|i| i.line)
                    .collect();
                method_finding(&mut presence, &mut findings, SmellKind::MysteryGuest, lines);
            }
            if detect_redundant_print(m) {
                let lines = m.print_calls.iter().map(|c| c.line).collect();
                method_finding(&mut presence, &mut findings, SmellKind::RedundantPrint, lines);
            }
            if detect_redundant_assertion(m) {
                let lines = m
                    .assertion_calls
                    .iter()
                    .filter(|c| is_redundant_assertion(c))
                    .map(|c| c.line)
                    .collect();
                method_finding(&mut presence, &mut findings, SmellKind::RedundantAssertion, lines);
            }
            if detect_resource_optimism(m) {
                method_finding(
                    &mut presence,
                    &mut findings,
                    SmellKind::ResourceOptimism,
                    Vec::new(),
                );
            }
            if detect_sensitive_equality(m) {
                let lines = m.to_string_calls.iter().map(|c| c.line).collect();
                method_finding(&mut presence, &mut findings, SmellKind::SensitiveEquality, lines);
            }
            if detect_sleepy_test(m) {
                let lines = m.sleep_calls.iter().map(|c| c.line).collect();
                method_finding(&mut presence, &mut findings, SmellKind::SleepyTest, lines);
            }
            if detect_unknown_test(m) {
                method_finding(&mut presence, &mut findings, SmellKind::UnknownTest, Vec::new());
            }
            if detect_verbose_test(m, options) {
                method_finding(&mut presence, &mut findings, SmellKind::VerboseTest, Vec::new());
            }

            SmellReport {
                smells_count: presence.count(),
                test_id,
                presence,
                findings,
                skipped_rules,
                loc: m.loc,
            }
        })
        .collect()
}

/// Mirrors the fact extractor's numeric-literal predicate so evidence
/// lines agree with `numeric_literal_assert_args`.
fn is_numeric_literal_arg(arg: &str) -> bool {
    let body = arg.strip_prefix('-').map(str::trim_start).unwrap_or(arg);
    !body.is_empty()
        && body.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '.')
        && body.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_')
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;
    use crate::facts::{extract_class_facts, parse_source_text};

    fn class_facts(src: &str) -> TestClassFacts {
        let unit = parse_source_text(Path::new("Fixture.java"), src).expect("fixture parses");
        extract_class_facts(&unit)
    }

    fn reports_for(src: &str, production: &ProductionFacts) -> Vec<SmellReport> {
        build_smell_reports("proj", &class_facts(src), production, &DetectOptions::default())
    }

    fn present(report: &SmellReport) -> Vec<SmellKind> {
        report.presence.present().collect()
    }

    #[test]
    fn assertion_roulette_needs_two_asserts() {
        let src = r#"
            public class RouletteTest {
                @Test public void two() { assertTrue(a); assertFalse(b); }
                @Test public void one() { assertTrue(a); }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert!(reports[0].presence.contains(SmellKind::AssertionRoulette));
        assert!(!reports[1].presence.contains(SmellKind::AssertionRoulette));
    }

    #[test]
    fn duplicate_assert_requires_same_name_and_args() {
        let src = r#"
            public class DupTest {
                @Test public void dup() { assertEquals(1, x); assertEquals(1,x); }
                @Test public void differentArgs() { assertEquals(1, x); assertEquals(2, x); }
                @Test public void differentName() { assertTrue(a); assertFalse(a); }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert!(reports[0].presence.contains(SmellKind::DuplicateAssert));
        assert!(!reports[1].presence.contains(SmellKind::DuplicateAssert));
        assert!(!reports[2].presence.contains(SmellKind::DuplicateAssert));
    }

    #[test]
    fn whitespace_differences_do_not_defeat_duplicate_detection() {
        let src = r#"
            public class SpacedTest {
                @Test public void spaced() {
                    assertSame(a , b);
                    assertSame(a, b);
                }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert!(reports[0].presence.contains(SmellKind::DuplicateAssert));
    }

    #[test]
    fn eager_and_lazy_skip_without_production() {
        let src = r#"
            public class OrphanTest {
                @Test public void t() { helper.run(); assertTrue(ok); }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert_eq!(reports[0].skipped_rules, vec![SmellKind::EagerTest, SmellKind::LazyTest]);
        assert!(!reports[0].presence.contains(SmellKind::EagerTest));
        assert!(!reports[0].presence.contains(SmellKind::LazyTest));
    }

    #[test]
    fn eager_counts_distinct_production_methods() {
        let production = ProductionFacts {
            class_name: "Cart".into(),
            method_names: ["addItem", "total"].iter().map(|s| s.to_string()).collect(),
            resolved: true,
        };
        let src = r#"
            public class CartTest {
                @Test public void both() { cart.addItem(x); cart.total(); assertNotNull(r); }
                @Test public void repeat() { cart.addItem(x); cart.addItem(y); assertNotNull(r); }
            }
        "#;
        let reports = reports_for(src, &production);
        assert!(reports[0].presence.contains(SmellKind::EagerTest));
        assert!(!reports[1].presence.contains(SmellKind::EagerTest));
        // Both call addItem → both lazy.
        assert!(reports[0].presence.contains(SmellKind::LazyTest));
        assert!(reports[1].presence.contains(SmellKind::LazyTest));
    }

    #[test]
    fn lazy_requires_sharing() {
        let production = ProductionFacts {
            class_name: "Ledger".into(),
            method_names: ["balance", "deposit"].iter().map(|s| s.to_string()).collect(),
            resolved: true,
        };
        let src = r#"
            public class LedgerTest {
                @Test public void a() { ledger.balance(); assertNotNull(x); }
                @Test public void b() { ledger.balance(); assertNotNull(y); }
                @Test public void c() { ledger.deposit(n); assertNotNull(z); }
            }
        "#;
        let reports = reports_for(src, &production);
        assert!(reports[0].presence.contains(SmellKind::LazyTest));
        assert!(reports[1].presence.contains(SmellKind::LazyTest));
        assert!(!reports[2].presence.contains(SmellKind::LazyTest));
    }

    #[test]
    fn class_scoped_smells_mark_every_method() {
        let src = r#"
            @Ignore
            public class LegacyTest {
                public LegacyTest() { counter = 1; }
                private int counter;
                @Test public void first() { assertTrue(a); }
                @Test public void second() { assertTrue(b); }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        for r in &reports {
            assert!(r.presence.contains(SmellKind::ConstructorInitialization));
            assert!(r.presence.contains(SmellKind::IgnoredTest));
        }
    }

    #[test]
    fn general_fixture_fires_when_a_test_skips_a_setup_field() {
        let smelly = r#"
            public class FixtureTest {
                private Parser parser;
                private Cache cache;
                @Before public void setUp() { parser = new Parser(); cache = new Cache(); }
                @Test public void usesParserOnly() { assertNotNull(parser); }
                @Test public void usesBoth() { assertSame(parser, cache); }
            }
        "#;
        let reports = reports_for(smelly, &ProductionFacts::unresolved());
        assert!(reports.iter().all(|r| r.presence.contains(SmellKind::GeneralFixture)));

        let clean = r#"
            public class SharedTest {
                private Service service;
                @Before public void setUp() { service = new Service(); }
                @Test public void one() { assertNotNull(service); }
                @Test public void two() { assertSame(service, service); }
            }
        "#;
        let reports = reports_for(clean, &ProductionFacts::unresolved());
        assert!(reports.iter().all(|r| !r.presence.contains(SmellKind::GeneralFixture)));
    }

    #[test]
    fn default_test_matches_exact_names_only() {
        let hit = "public class ExampleUnitTest { @Test public void t() { assertTrue(a); } }";
        let near = "public class ExampleUnitTests { @Test public void t() { assertTrue(a); } }";
        assert!(reports_for(hit, &ProductionFacts::unresolved())[0]
            .presence
            .contains(SmellKind::DefaultTest));
        assert!(!reports_for(near, &ProductionFacts::unresolved())[0]
            .presence
            .contains(SmellKind::DefaultTest));
    }

    #[test]
    fn redundant_assertion_covers_tautologies() {
        let src = r#"
            public class SelfTest {
                @Test public void same() { assertEquals(total, total); }
                @Test public void constant() { assertTrue(true); }
                @Test public void honest() { assertEquals(total, expected); }
                @Test public void negated() { assertTrue(false); }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert!(reports[0].presence.contains(SmellKind::RedundantAssertion));
        assert!(reports[1].presence.contains(SmellKind::RedundantAssertion));
        assert!(!reports[2].presence.contains(SmellKind::RedundantAssertion));
        assert!(!reports[3].presence.contains(SmellKind::RedundantAssertion));
    }

    #[test]
    fn resource_optimism_is_per_variable() {
        let src = r#"
            public class FilesTest {
                @Test public void unchecked() {
                    File report = new File(dir, name);
                    assertNotNull(report.getName());
                }
                @Test public void checked() {
                    File report = new File(dir);
                    assertTrue(report.exists());
                }
                @Test public void mixed() {
                    File good = new File(a);
                    File bad = new File(b);
                    assertTrue(good.exists());
                    assertNotNull(bad.getName());
                }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert!(reports[0].presence.contains(SmellKind::ResourceOptimism));
        assert!(!reports[1].presence.contains(SmellKind::ResourceOptimism));
        assert!(reports[2].presence.contains(SmellKind::ResourceOptimism));
        // All three instantiate File → Mystery Guest everywhere.
        assert!(reports.iter().all(|r| r.presence.contains(SmellKind::MysteryGuest)));
    }

    #[test]
    fn unknown_test_respects_expected_param() {
        let src = r#"
            public class EventsTest {
                @Test public void firesOnly() { dispatcher.fire(event); }
                @Test(expected = IllegalStateException.class)
                public void boom() { parser.parse(raw); }
                @Test public void verified() { assertTrue(ok); }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        assert!(reports[0].presence.contains(SmellKind::UnknownTest));
        assert!(!reports[1].presence.contains(SmellKind::UnknownTest));
        assert!(!reports[2].presence.contains(SmellKind::UnknownTest));
    }

    #[test]
    fn verbose_threshold_is_configurable() {
        let src = r#"
            public class StepsTest {
                @Test public void four() { a(); b(); c(); assertTrue(ok); }
            }
        "#;
        let facts = class_facts(src);
        let tight = DetectOptions { verbose_threshold: 3, ..DetectOptions::default() };
        let reports =
            build_smell_reports("proj", &facts, &ProductionFacts::unresolved(), &tight);
        assert!(reports[0].presence.contains(SmellKind::VerboseTest));
        let default =
            build_smell_reports("proj", &facts, &ProductionFacts::unresolved(), &DetectOptions::default());
        assert!(!default[0].presence.contains(SmellKind::VerboseTest));
    }

    #[test]
    fn smells_count_matches_presence_and_findings_have_evidence() {
        let src = r#"
            public class CountTest {
                @Test public void smelly() {
                    Thread.sleep(100);
                    assertEquals("x", sb.toString());
                }
            }
        "#;
        let reports = reports_for(src, &ProductionFacts::unresolved());
        let r = &reports[0];
        assert_eq!(r.smells_count, r.presence.count());
        assert_eq!(
            present(r),
            vec![SmellKind::SensitiveEquality, SmellKind::SleepyTest]
        );
        for f in &r.findings {
            if f.scope == FindingScope::Method {
                assert!(!f.evidence_lines.is_empty());
                assert!(f
                    .evidence_lines
                    .iter()
                    .all(|l| (r.test_id.method_name == "smelly") && *l >= 1));
            }
        }
    }

    #[test]
    fn empty_class_yields_no_reports() {
        let reports = reports_for("public class Quiet {}", &ProductionFacts::unresolved());
        assert!(reports.is_empty());
    }

    #[test]
    fn adding_an_assertion_never_clears_roulette() {
        // Monotonicity spot-check: 2 asserts → true stays true with 3.
        let base = r#"
            public class MonoTest {
                @Test public void t() { assertTrue(a); assertTrue(b); }
            }
        "#;
        let more = r#"
            public class MonoTest {
                @Test public void t() { assertTrue(a); assertTrue(b); assertTrue(c); }
            }
        "#;
        assert!(reports_for(base, &ProductionFacts::unresolved())[0]
            .presence
            .contains(SmellKind::AssertionRoulette));
        assert!(reports_for(more, &ProductionFacts::unresolved())[0]
            .presence
            .contains(SmellKind::AssertionRoulette));
    }
}
