//! Parsing of Java test sources into immutable fact tables.
//!
//! The parser handles a pragmatic Java subset: type/method/field
//! declarations, annotations, statements, method calls, object creation,
//! and literals. Generics, lambdas, and anonymous classes are tokenized
//! and traversed for call sites but not semantically modeled — every
//! smell rule downstream needs only the facts collected here.

pub mod lexer;
mod parser;
mod extract;
mod resolve;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use extract::extract_class_facts;
pub use resolve::{build_corpus_index, resolve_production_class, CorpusIndex};

/// Errors surfaced while reading or parsing one source file. Per-file
/// failures are diagnostics at corpus level, never fatal for a run.
#[derive(Debug, Error)]
pub enum FactsError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {reason}")]
    Parse { path: PathBuf, reason: String },
}

/// One successfully parsed source file.
#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub path: PathBuf,
    /// Declared package, empty for the default package.
    pub package_name: String,
    /// Name of the first top-level type declaration.
    pub class_name: String,
    pub raw_text: String,
    pub line_count: usize,
}

/// Annotation with its parameters, e.g. `@Test(expected = IO.class)`
/// becomes `name = "Test"`, `parameters = {"expected": "IO.class"}`.
/// A single unnamed parameter is stored under the key `"value"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationFact {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
}

/// One call site: `receiver.method(args)`. The receiver is the dotted
/// name chain when it is a plain chain of identifiers (`System.out`,
/// `sb`, `this`); calls hanging off expressions (`foo().bar()`) have no
/// receiver. Argument token sequences are whitespace-normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallSite {
    pub receiver: Option<String>,
    pub method_name: String,
    pub argument_tokens: Vec<String>,
    pub line: usize,
}

impl CallSite {
    /// First segment of the receiver chain, if any (`System.out` → `System`).
    pub fn receiver_head(&self) -> Option<&str> {
        self.receiver.as_deref().map(|r| r.split('.').next().unwrap_or(r))
    }
}

/// `new Type(...)` occurrence; `type_name` is the simple (unqualified) name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instantiation {
    pub type_name: String,
    pub line: usize,
}

/// Local variable declaration (including method parameters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDecl {
    pub name: String,
    /// Simple type name (`File`, `int`, `Map`).
    pub type_name: String,
    pub line: usize,
}

/// Field declared on the test class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldFact {
    pub name: String,
    pub type_name: String,
}

/// Per-kind control-flow statement counts inside one method body.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ControlFlowCounts {
    pub if_count: usize,
    pub switch_count: usize,
    pub conditional_expr_count: usize,
    pub for_count: usize,
    pub foreach_count: usize,
    pub while_count: usize,
}

impl ControlFlowCounts {
    pub fn total(&self) -> usize {
        self.if_count
            + self.switch_count
            + self.conditional_expr_count
            + self.for_count
            + self.foreach_count
            + self.while_count
    }
}

/// Fact table for one method of a test class. Call sites are classified
/// exclusively: a call counted as an assertion never also appears among
/// print/sleep/toString/file-API/candidate calls.
#[derive(Debug, Clone)]
pub struct TestMethodFacts {
    pub name: String,
    pub start_line: usize,
    pub end_line: usize,
    /// Non-blank, non-comment physical lines in [start_line, end_line],
    /// inclusive of the signature and closing brace.
    pub loc: usize,
    pub executable_statement_count: usize,
    pub annotations: Vec<AnnotationFact>,
    pub parameter_count: usize,
    pub control_flow_counts: ControlFlowCounts,
    pub assertion_calls: Vec<CallSite>,
    /// Calls not classified as assertion/print/sleep/toString/file-API;
    /// production calls are the subset whose name the production class
    /// declares (see [`TestMethodFacts::production_calls`]).
    pub candidate_calls: Vec<CallSite>,
    pub print_calls: Vec<CallSite>,
    pub sleep_calls: Vec<CallSite>,
    pub to_string_calls: Vec<CallSite>,
    pub file_api_calls: Vec<CallSite>,
    pub instantiations: Vec<Instantiation>,
    pub local_decls: Vec<LocalDecl>,
    /// Names of locals/parameters declared with a `File` type.
    pub file_typed_locals: Vec<String>,
    /// Every identifier appearing in the body.
    pub referenced_names: BTreeSet<String>,
    /// Names assigned via `name = ...` or `this.name = ...` (compound
    /// assignment included), excluding local declarations.
    pub assigned_names: BTreeSet<String>,
    /// Count of assertion arguments that are bare numeric literals.
    pub numeric_literal_assert_args: usize,
}

impl TestMethodFacts {
    /// Calls into the resolved production class: candidate calls whose
    /// method name the production class declares. Empty when unresolved.
    pub fn production_calls<'a>(&'a self, production: &ProductionFacts) -> Vec<&'a CallSite> {
        if !production.resolved {
            return Vec::new();
        }
        self.candidate_calls
            .iter()
            .filter(|c| production.method_names.contains(&c.method_name))
            .collect()
    }

    /// True when any `@Test` annotation carries an `expected` parameter.
    pub fn has_expected_param(&self) -> bool {
        self.annotations
            .iter()
            .any(|a| a.name == "Test" && a.parameters.contains_key("expected"))
    }

    pub fn has_annotation(&self, name: &str) -> bool {
        self.annotations.iter().any(|a| a.name == name)
    }
}

/// Fact table for one test class (the first top-level type of a unit).
#[derive(Debug, Clone)]
pub struct TestClassFacts {
    pub unit: SourceUnit,
    pub class_name: String,
    pub is_test_class: bool,
    pub superclass_name: Option<String>,
    pub declares_constructor: bool,
    /// Fields assigned inside `setUp` / `@Before` / `@BeforeEach` methods.
    pub setup_fields: BTreeSet<String>,
    pub class_annotations: Vec<AnnotationFact>,
    pub fields: Vec<FieldFact>,
    /// Identified test methods, in source order.
    pub methods: Vec<TestMethodFacts>,
    /// Non-test methods (helpers, fixture methods), in source order.
    pub helper_methods: Vec<TestMethodFacts>,
}

impl TestClassFacts {
    pub fn has_class_annotation(&self, name: &str) -> bool {
        self.class_annotations.iter().any(|a| a.name == name)
    }
}

/// Resolution of a test class to its production class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionFacts {
    pub class_name: String,
    pub method_names: BTreeSet<String>,
    pub resolved: bool,
}

impl ProductionFacts {
    /// The unresolved outcome: Eager/Lazy rules will be skipped.
    pub fn unresolved() -> Self {
        ProductionFacts { class_name: String::new(), method_names: BTreeSet::new(), resolved: false }
    }
}

impl fmt::Display for ProductionFacts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.resolved {
            write!(f, "{} ({} methods)", self.class_name, self.method_names.len())
        } else {
            write!(f, "<unresolved>")
        }
    }
}

/// Reads and parses one file into a [`SourceUnit`].
///
/// Fails with [`FactsError::Io`] when unreadable and [`FactsError::Parse`]
/// when no top-level type declaration is found; callers report and skip.
pub fn parse_source_unit(path: &Path) -> Result<SourceUnit, FactsError> {
    let raw_text = std::fs::read_to_string(path)
        .map_err(|source| FactsError::Io { path: path.to_path_buf(), source })?;
    parse_source_text(path, &raw_text)
}

/// Parses already-loaded source text (the non-IO half of
/// [`parse_source_unit`], also convenient for tests).
pub fn parse_source_text(path: &Path, raw_text: &str) -> Result<SourceUnit, FactsError> {
    let tokens = lexer::tokenize(raw_text);
    let compilation = parser::parse_compilation_unit(&tokens);
    let first_type = compilation.types.first().ok_or_else(|| FactsError::Parse {
        path: path.to_path_buf(),
        reason: "no top-level type declaration found".to_string(),
    })?;
    Ok(SourceUnit {
        path: path.to_path_buf(),
        package_name: compilation.package.clone().unwrap_or_default(),
        class_name: first_type.name.clone(),
        raw_text: raw_text.to_string(),
        line_count: raw_text.lines().count(),
    })
}
