//! Body scanner: turns parsed members into [`TestMethodFacts`] and
//! assembles [`TestClassFacts`] with test-method identification.

use std::collections::BTreeSet;

use super::lexer::{tokenize, Token, TokenKind};
use super::parser::{
    self, match_paren, normalize_tokens, parse_compilation_unit, split_top_level, try_angle_span,
    RawMethod,
};
use super::{
    CallSite, ControlFlowCounts, Instantiation, LocalDecl, SourceUnit, TestClassFacts,
    TestMethodFacts,
};

/// Assertion method names, matched by simple name regardless of receiver
/// (covers JUnit 3/4/5 and static imports).
pub const ASSERTION_NAMES: &[&str] = &[
    "assertEquals",
    "assertNotEquals",
    "assertTrue",
    "assertFalse",
    "assertNull",
    "assertNotNull",
    "assertSame",
    "assertNotSame",
    "assertArrayEquals",
    "assertThat",
    "assertThrows",
    "fail",
];

const PRINT_NAMES: &[&str] = &["print", "println", "printf", "write"];

/// Keywords excluded from call-site detection and referenced-name capture.
const KEYWORDS: &[&str] = &[
    "if", "else", "for", "while", "do", "switch", "case", "default", "break", "continue",
    "return", "try", "catch", "finally", "throw", "throws", "new", "class", "interface", "enum",
    "extends", "implements", "import", "package", "public", "private", "protected", "static",
    "final", "abstract", "synchronized", "native", "strictfp", "transient", "volatile",
    "instanceof", "this", "super", "null", "true", "false", "void", "assert",
];

fn is_keyword(text: &str) -> bool {
    KEYWORDS.contains(&text)
}

fn is_assertion_name(name: &str) -> bool {
    ASSERTION_NAMES.contains(&name)
}

/// Extracts the full fact table for the first top-level type of `unit`.
///
/// Test methods are those carrying a `@Test` annotation (any
/// parameterization), or — when the class extends `TestCase` — public
/// JUnit-3 style methods whose name starts with `test` and that take no
/// parameters. Fields assigned in `setUp`/`@Before`/`@BeforeEach`
/// methods populate `setup_fields`.
pub fn extract_class_facts(unit: &SourceUnit) -> TestClassFacts {
    let tokens = tokenize(&unit.raw_text);
    let cu = parse_compilation_unit(&tokens);
    let token_lines: BTreeSet<usize> = tokens.iter().map(|t| t.line).collect();

    let Some(ty) = cu.types.into_iter().next() else {
        // `parse_source_unit` guarantees a type exists; stay total anyway.
        return empty_facts(unit);
    };

    let superclass = ty.superclass.clone();
    let extends_test_case = superclass.as_deref() == Some("TestCase");

    let mut methods = Vec::new();
    let mut helper_methods = Vec::new();
    for raw in &ty.methods {
        let facts = method_facts(&tokens, &token_lines, raw);
        if is_test_method(&facts, extends_test_case) {
            methods.push(facts);
        } else {
            helper_methods.push(facts);
        }
    }

    let field_names: BTreeSet<String> = ty.fields.iter().map(|f| f.name.clone()).collect();
    let mut setup_fields = BTreeSet::new();
    for helper in &helper_methods {
        if is_setup_method(helper) {
            for name in helper.assigned_names.intersection(&field_names) {
                setup_fields.insert(name.clone());
            }
        }
    }

    TestClassFacts {
        is_test_class: !methods.is_empty() || extends_test_case,
        class_name: ty.name.clone(),
        superclass_name: superclass,
        declares_constructor: !ty.constructors.is_empty(),
        setup_fields,
        class_annotations: ty.annotations,
        fields: ty.fields,
        methods,
        helper_methods,
        unit: unit.clone(),
    }
}

fn empty_facts(unit: &SourceUnit) -> TestClassFacts {
    TestClassFacts {
        unit: unit.clone(),
        class_name: unit.class_name.clone(),
        is_test_class: false,
        superclass_name: None,
        declares_constructor: false,
        setup_fields: BTreeSet::new(),
        class_annotations: Vec::new(),
        fields: Vec::new(),
        methods: Vec::new(),
        helper_methods: Vec::new(),
    }
}

fn is_test_method(m: &TestMethodFacts, extends_test_case: bool) -> bool {
    m.has_annotation("Test")
        || (extends_test_case && m.name.starts_with("test") && m.parameter_count == 0)
}

fn is_setup_method(m: &TestMethodFacts) -> bool {
    m.name == "setUp" || m.has_annotation("Before") || m.has_annotation("BeforeEach")
}

fn method_facts(tokens: &[Token], token_lines: &BTreeSet<usize>, raw: &RawMethod) -> TestMethodFacts {
    let params = parse_params(tokens, raw.params.0, raw.params.1, raw.start_line);
    let parameter_count = params.len();
    let scan = match raw.body {
        Some((start, end)) => scan_body(tokens, start, end, &params),
        None => BodyScan::default(),
    };

    let mut assertion_calls = Vec::new();
    let mut candidate_calls = Vec::new();
    let mut print_calls = Vec::new();
    let mut sleep_calls = Vec::new();
    let mut to_string_calls = Vec::new();
    let mut file_api_calls = Vec::new();

    let file_typed_locals: Vec<String> = {
        let mut seen = BTreeSet::new();
        params
            .iter()
            .chain(scan.local_decls.iter())
            .filter(|d| d.type_name == "File")
            .filter_map(|d| seen.insert(d.name.clone()).then(|| d.name.clone()))
            .collect()
    };

    // Exclusive call-site classification, in fixed precedence order.
    for call in scan.calls {
        if is_assertion_name(&call.method_name) {
            assertion_calls.push(call);
        } else if PRINT_NAMES.contains(&call.method_name.as_str())
            && call.receiver_head() == Some("System")
        {
            print_calls.push(call);
        } else if call.method_name == "sleep" && call.receiver_head() == Some("Thread") {
            sleep_calls.push(call);
        } else if call.method_name == "toString" {
            to_string_calls.push(call);
        } else if call
            .receiver
            .as_deref()
            .is_some_and(|r| !r.contains('.') && file_typed_locals.iter().any(|v| v == r))
        {
            file_api_calls.push(call);
        } else {
            candidate_calls.push(call);
        }
    }

    let numeric_literal_assert_args = assertion_calls
        .iter()
        .flat_map(|c| c.argument_tokens.iter())
        .filter(|a| is_numeric_literal(a))
        .count();

    let mut local_decls = params;
    local_decls.extend(scan.local_decls);

    TestMethodFacts {
        name: raw.name.clone(),
        start_line: raw.start_line,
        end_line: raw.end_line,
        loc: token_lines.range(raw.start_line..=raw.end_line).count(),
        executable_statement_count: scan.statement_count,
        annotations: raw.annotations.clone(),
        parameter_count,
        control_flow_counts: scan.control,
        assertion_calls,
        candidate_calls,
        print_calls,
        sleep_calls,
        to_string_calls,
        file_api_calls,
        instantiations: scan.instantiations,
        local_decls,
        file_typed_locals,
        referenced_names: scan.referenced,
        assigned_names: scan.assigned,
        numeric_literal_assert_args,
    }
}

/// A bare numeric literal argument: `5`, `2.5f`, or `-3`.
fn is_numeric_literal(arg: &str) -> bool {
    let body = arg.strip_prefix('-').map(str::trim_start).unwrap_or(arg);
    !body.is_empty()
        && body.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '.')
        && body
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_')
}

/// Parses the parameter list into pseudo-declarations (so parameters of
/// type `File` participate in file-API tracking).
fn parse_params(tokens: &[Token], start: usize, end: usize, line: usize) -> Vec<LocalDecl> {
    let mut out = Vec::new();
    for (s, e) in split_top_level(tokens, start, end) {
        let mut idents: Vec<&Token> = Vec::new();
        let mut i = s;
        while i < e {
            let t = &tokens[i];
            if t.is("<") {
                i = parser::skip_angle_span(tokens, i);
                continue;
            }
            if t.kind == TokenKind::Ident && !parser::is_modifier(&t.text) {
                idents.push(t);
            }
            i += 1;
        }
        if let Some((name, type_toks)) = idents.split_last() {
            out.push(LocalDecl {
                name: name.text.clone(),
                type_name: type_toks.last().map(|t| t.text.clone()).unwrap_or_default(),
                line,
            });
        }
    }
    out
}

#[derive(Default)]
struct BodyScan {
    statement_count: usize,
    control: ControlFlowCounts,
    calls: Vec<CallSite>,
    instantiations: Vec<Instantiation>,
    local_decls: Vec<LocalDecl>,
    referenced: BTreeSet<String>,
    assigned: BTreeSet<String>,
}

const ASSIGN_OPS: &[&str] = &["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="];

/// Single pass over a method body collecting statements, control flow,
/// call sites, instantiations, local declarations, and name usage.
///
/// Statement counting is token based: simple statements end at `;` at
/// parenthesis depth zero; each `if`/`for`/`while`/`switch`/`do` header
/// counts as one statement; `else`/`try`/`catch`/`finally` and labels do
/// not count; the `while` tail of a `do` loop is not double counted.
fn scan_body(tokens: &[Token], start: usize, end: usize, params: &[LocalDecl]) -> BodyScan {
    let mut scan = BodyScan::default();
    let mut known_locals: BTreeSet<String> = params.iter().map(|p| p.name.clone()).collect();

    let mut paren_depth = 0usize;
    let mut brace_depth = 0usize;
    let mut have_tokens = false;
    let mut at_stmt_start = true;
    let mut do_stack: Vec<usize> = Vec::new();

    let mut i = start;
    while i < end {
        let t = &tokens[i];
        let text = t.text.as_str();
        let top = paren_depth == 0;

        match text {
            "(" => {
                // A control header's parentheses carry no statement of
                // their own; anything else starting with `(` does.
                let after_control = i > start
                    && matches!(
                        tokens[i - 1].text.as_str(),
                        "if" | "for" | "while" | "switch" | "catch" | "synchronized" | "try"
                    );
                if top && !after_control {
                    have_tokens = true;
                    at_stmt_start = false;
                }
                paren_depth += 1;
            }
            ")" => {
                paren_depth = paren_depth.saturating_sub(1);
            }
            "{" => {
                brace_depth += 1;
                if top {
                    have_tokens = false;
                    at_stmt_start = true;
                }
            }
            "}" => {
                brace_depth = brace_depth.saturating_sub(1);
                if top {
                    have_tokens = false;
                    at_stmt_start = true;
                }
            }
            ";" => {
                if top {
                    if have_tokens {
                        scan.statement_count += 1;
                    }
                    have_tokens = false;
                    at_stmt_start = true;
                }
            }
            ":" => {
                if top {
                    have_tokens = false;
                    at_stmt_start = true;
                }
            }
            "if" | "switch" | "for" | "do" if top => {
                scan.statement_count += 1;
                match text {
                    "if" => scan.control.if_count += 1,
                    "switch" => scan.control.switch_count += 1,
                    "do" => {
                        scan.control.while_count += 1;
                        do_stack.push(brace_depth);
                    }
                    _ => {
                        if for_header_is_foreach(tokens, i, end) {
                            scan.control.foreach_count += 1;
                        } else {
                            scan.control.for_count += 1;
                        }
                    }
                }
                have_tokens = false;
                at_stmt_start = false;
            }
            "while" if top => {
                let is_do_tail = i > start
                    && tokens[i - 1].is("}")
                    && do_stack.last() == Some(&brace_depth);
                if is_do_tail {
                    do_stack.pop();
                } else {
                    scan.statement_count += 1;
                    scan.control.while_count += 1;
                }
                have_tokens = false;
                at_stmt_start = false;
            }
            "else" | "catch" | "finally" | "case" | "default" if top => {
                have_tokens = false;
                at_stmt_start = text == "else";
            }
            "try" if top => {
                have_tokens = false;
                at_stmt_start = false;
                // try-with-resources: declarations live inside the header.
                if tokens.get(i + 1).is_some_and(|n| n.is("(")) {
                    if let Some(close) = match_paren(tokens, i + 1) {
                        register_try_resources(tokens, i + 2, close, &mut scan, &mut known_locals);
                    }
                }
            }
            "?" => {
                if is_ternary_question(tokens, i, start, end) {
                    scan.control.conditional_expr_count += 1;
                }
                if top {
                    have_tokens = true;
                    at_stmt_start = false;
                }
            }
            _ if ASSIGN_OPS.contains(&text) => {
                record_assignment(tokens, i, start, &known_locals, &mut scan.assigned);
                if top {
                    have_tokens = true;
                    at_stmt_start = false;
                }
            }
            _ => {
                if t.kind == TokenKind::Ident {
                    if !is_keyword(text) {
                        scan.referenced.insert(text.to_string());
                    }
                    if at_stmt_start && top && !is_keyword(text) {
                        try_register_decl(tokens, i, end, &mut scan, &mut known_locals);
                    }
                    record_call_or_instantiation(tokens, i, start, end, &mut scan);
                }
                if top {
                    have_tokens = true;
                    at_stmt_start = false;
                }
            }
        }
        i += 1;
    }

    scan
}

/// A `for` header is a foreach when its immediate paren level contains
/// `:` rather than `;`.
fn for_header_is_foreach(tokens: &[Token], for_idx: usize, end: usize) -> bool {
    let Some(open) = tokens.get(for_idx + 1).filter(|t| t.is("(")).map(|_| for_idx + 1) else {
        return false;
    };
    let Some(close) = match_paren(tokens, open) else {
        return false;
    };
    let mut depth = 0usize;
    for t in &tokens[open + 1..close.min(end)] {
        if t.is("(") || t.is("[") {
            depth += 1;
        } else if t.is(")") || t.is("]") {
            depth = depth.saturating_sub(1);
        } else if depth == 0 {
            if t.is(":") {
                return true;
            }
            if t.is(";") {
                return false;
            }
        }
    }
    false
}

/// Heuristic for ternary `?` vs generic wildcard `?`: wildcards follow
/// `<` or `,` and precede `>`/`,`/`extends`/`super`.
fn is_ternary_question(tokens: &[Token], idx: usize, start: usize, end: usize) -> bool {
    if idx > start {
        let prev = tokens[idx - 1].text.as_str();
        if prev == "<" || prev == "," {
            return false;
        }
    }
    if idx + 1 < end {
        let next = tokens[idx + 1].text.as_str();
        if matches!(next, ">" | "," | "extends" | "super") {
            return false;
        }
    }
    true
}

/// Records `name = ...` / `this.name = ...` targets; locals shadow fields.
fn record_assignment(
    tokens: &[Token],
    op_idx: usize,
    start: usize,
    known_locals: &BTreeSet<String>,
    assigned: &mut BTreeSet<String>,
) {
    if op_idx == start {
        return;
    }
    let prev = &tokens[op_idx - 1];
    if prev.kind != TokenKind::Ident || is_keyword(&prev.text) {
        return;
    }
    let name = prev.text.clone();
    if op_idx >= start + 3 && tokens[op_idx - 2].is(".") {
        if tokens[op_idx - 3].is("this") {
            assigned.insert(name);
        }
        // `obj.field = ...` assigns someone else's field: ignored.
        return;
    }
    if !known_locals.contains(&name) {
        assigned.insert(name);
    }
}

/// At a statement start, tries to read `Type name (= init)? (, name (= init)?)* ;`
/// and registers the declared locals. Never consumes input: the main scan
/// continues over the same tokens so calls inside initializers are kept.
fn try_register_decl(
    tokens: &[Token],
    i: usize,
    end: usize,
    scan: &mut BodyScan,
    known_locals: &mut BTreeSet<String>,
) {
    let Some((type_name, after_type)) = read_type_ref(tokens, i, end) else {
        return;
    };
    let Some(name_tok) = tokens.get(after_type) else {
        return;
    };
    if name_tok.kind != TokenKind::Ident || is_keyword(&name_tok.text) || after_type >= end {
        return;
    }
    let Some(boundary) = tokens.get(after_type + 1) else {
        return;
    };
    if !(boundary.is("=") || boundary.is(";") || boundary.is(",")) {
        return;
    }

    let line = name_tok.line;
    let resolved_type = if type_name == "var" {
        inferred_var_type(tokens, after_type + 1, end).unwrap_or(type_name)
    } else {
        type_name
    };

    let mut register = |name: &Token| {
        scan.local_decls.push(LocalDecl {
            name: name.text.clone(),
            type_name: resolved_type.clone(),
            line,
        });
        known_locals.insert(name.text.clone());
    };
    register(name_tok);

    // Walk any further declarators of the same statement.
    let mut j = after_type + 1;
    loop {
        if j >= end || tokens[j].is(";") {
            return;
        }
        if tokens[j].is(",") {
            if let Some(t) = tokens.get(j + 1).filter(|t| t.kind == TokenKind::Ident) {
                register(t);
            }
            j += 2;
            continue;
        }
        // Skip an initializer expression to the next top-level `,` or `;`.
        j += 1;
        let mut depth = 0usize;
        while j < end {
            let t = &tokens[j];
            if t.is("(") || t.is("[") || t.is("{") {
                depth += 1;
            } else if t.is(")") || t.is("]") || t.is("}") {
                if depth == 0 {
                    return; // malformed; bail out
                }
                depth -= 1;
            } else if t.is("<") && depth == 0 {
                if let Some(g) = try_angle_span(tokens, j) {
                    j = g;
                    continue;
                }
            } else if depth == 0 && (t.is(",") || t.is(";")) {
                break;
            }
            j += 1;
        }
    }
}

/// Reads a type reference `Ident(.Ident)* <...>? []*`; returns its simple
/// name and the index just past it.
fn read_type_ref(tokens: &[Token], i: usize, end: usize) -> Option<(String, usize)> {
    let first = tokens.get(i)?;
    if first.kind != TokenKind::Ident || is_keyword(&first.text) {
        return None;
    }
    let mut simple = first.text.clone();
    let mut j = i + 1;
    while j + 1 < end && tokens[j].is(".") && tokens[j + 1].kind == TokenKind::Ident {
        simple = tokens[j + 1].text.clone();
        j += 2;
    }
    if j < end && tokens[j].is("<") {
        j = try_angle_span(tokens, j)?;
    }
    while j + 1 < end && tokens[j].is("[") && tokens[j + 1].is("]") {
        j += 2;
    }
    Some((simple, j))
}

/// For `var x = new Foo(...)`, infers `Foo` as the declared type.
fn inferred_var_type(tokens: &[Token], boundary: usize, end: usize) -> Option<String> {
    if !tokens.get(boundary)?.is("=") {
        return None;
    }
    if !tokens.get(boundary + 1)?.is("new") {
        return None;
    }
    let (dotted, _) = read_type_ref(tokens, boundary + 2, end)?;
    Some(dotted)
}

/// Registers declarations in a try-with-resources header
/// (`try (File f = open(); Reader r = ...)`).
fn register_try_resources(
    tokens: &[Token],
    start: usize,
    end: usize,
    scan: &mut BodyScan,
    known_locals: &mut BTreeSet<String>,
) {
    let mut seg_start = start;
    let mut depth = 0usize;
    for j in start..=end {
        let at_end = j == end;
        if !at_end {
            let t = &tokens[j];
            if t.is("(") || t.is("[") || t.is("{") {
                depth += 1;
                continue;
            }
            if t.is(")") || t.is("]") || t.is("}") {
                depth = depth.saturating_sub(1);
                continue;
            }
            if !(t.is(";") && depth == 0) {
                continue;
            }
        }
        if seg_start < j {
            if let Some((type_name, after_type)) = read_type_ref(tokens, seg_start, j) {
                if let Some(name_tok) = tokens
                    .get(after_type)
                    .filter(|t| t.kind == TokenKind::Ident && !is_keyword(&t.text))
                {
                    scan.local_decls.push(LocalDecl {
                        name: name_tok.text.clone(),
                        type_name,
                        line: name_tok.line,
                    });
                    known_locals.insert(name_tok.text.clone());
                }
            }
        }
        seg_start = j + 1;
    }
}

/// When `ident (` or `ident<...> (` is seen, records either an
/// instantiation (preceded by `new`) or a call site with its receiver
/// chain and normalized argument token sequences.
fn record_call_or_instantiation(
    tokens: &[Token],
    ident_idx: usize,
    start: usize,
    end: usize,
    scan: &mut BodyScan,
) {
    let name = tokens[ident_idx].text.clone();
    if is_keyword(&name) {
        return;
    }

    let open = match tokens.get(ident_idx + 1) {
        Some(t) if t.is("(") => ident_idx + 1,
        Some(t) if t.is("<") => match try_angle_span(tokens, ident_idx + 1) {
            Some(g) if g < end && tokens[g].is("(") => g,
            _ => return,
        },
        _ => return,
    };
    let Some(close) = match_paren(tokens, open) else {
        return;
    };
    if close > end {
        return;
    }

    // Walk back over `a.b.` receiver chain.
    let mut segs: Vec<&str> = Vec::new();
    let mut j = ident_idx;
    while j >= start + 2 && tokens[j - 1].is(".") && tokens[j - 2].kind == TokenKind::Ident {
        segs.push(tokens[j - 2].text.as_str());
        j -= 2;
    }
    let chain_start = j;
    let preceded_by_new = chain_start > start && tokens[chain_start - 1].is("new");

    if preceded_by_new {
        scan.instantiations.push(Instantiation { type_name: name, line: tokens[ident_idx].line });
        return;
    }

    let receiver = if segs.is_empty() {
        None
    } else {
        segs.reverse();
        Some(segs.join("."))
    };

    let argument_tokens = split_top_level(tokens, open + 1, close)
        .into_iter()
        .map(|(s, e)| normalize_tokens(&tokens[s..e]))
        .filter(|s| !s.is_empty())
        .collect();

    scan.calls.push(CallSite {
        receiver,
        method_name: name,
        argument_tokens,
        line: tokens[ident_idx].line,
    });
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;
    use crate::facts::parse_source_text;

    fn facts(src: &str) -> TestClassFacts {
        let unit = parse_source_text(Path::new("Test.java"), src).expect("fixture parses");
        extract_class_facts(&unit)
    }

    fn wrap(body: &str) -> String {
        format!("public class SampleTest {{\n    @Test\n    public void scenario() {{\n{body}\n    }}\n}}\n")
    }

    fn scenario_facts(body: &str) -> TestMethodFacts {
        let f = facts(&wrap(body));
        f.methods.into_iter().next().expect("one test method")
    }

    #[test]
    fn assertion_calls_are_classified_and_args_normalized() {
        let m = scenario_facts("        assertEquals(\"a:1\", sb.toString());\n        assertTrue(done);");
        assert_eq!(m.assertion_calls.len(), 2);
        assert_eq!(m.assertion_calls[0].argument_tokens, vec!["\"a:1\"", "sb.toString()"]);
        assert_eq!(m.to_string_calls.len(), 1);
        assert!(m.candidate_calls.is_empty());
    }

    #[test]
    fn statement_counting_matches_token_rules() {
        let m = scenario_facts(
            "        int total = 0;\n        for (int i = 0; i < 3; i++) {\n            total += i;\n        }\n        if (total > 1) {\n            log(total);\n        }\n        assertTrue(total > 1);",
        );
        // decl, for, body stmt, if, log call, assert
        assert_eq!(m.executable_statement_count, 6);
        assert_eq!(m.control_flow_counts.for_count, 1);
        assert_eq!(m.control_flow_counts.if_count, 1);
    }

    #[test]
    fn do_while_counts_once() {
        let m = scenario_facts("        do {\n            step();\n        } while (again());\n        assertTrue(ok);");
        // do, step, assert — the while tail and its `;` are not re-counted
        assert_eq!(m.executable_statement_count, 3);
        assert_eq!(m.control_flow_counts.while_count, 1);
    }

    #[test]
    fn foreach_and_ternary_are_distinguished() {
        let m = scenario_facts(
            "        for (String s : names) {\n            use(s);\n        }\n        String label = ready ? \"y\" : \"n\";\n        assertNotNull(label);",
        );
        assert_eq!(m.control_flow_counts.foreach_count, 1);
        assert_eq!(m.control_flow_counts.for_count, 0);
        assert_eq!(m.control_flow_counts.conditional_expr_count, 1);
    }

    #[test]
    fn generic_wildcards_are_not_ternaries() {
        let m = scenario_facts("        List<?> items = build();\n        assertNotNull(items);");
        assert_eq!(m.control_flow_counts.conditional_expr_count, 0);
    }

    #[test]
    fn sleep_requires_thread_receiver() {
        let m = scenario_facts(
            "        Thread.sleep(1000);\n        TimeUnit.SECONDS.sleep(1);\n        assertTrue(ok);",
        );
        assert_eq!(m.sleep_calls.len(), 1);
        assert_eq!(m.sleep_calls[0].receiver.as_deref(), Some("Thread"));
    }

    #[test]
    fn print_requires_system_receiver() {
        let m = scenario_facts(
            "        System.out.println(\"progress\");\n        logger.println(\"not a smell\");\n        assertTrue(ok);",
        );
        assert_eq!(m.print_calls.len(), 1);
        assert_eq!(m.print_calls[0].receiver.as_deref(), Some("System.out"));
    }

    #[test]
    fn instantiations_and_locals_are_tracked() {
        let m = scenario_facts(
            "        File report = new File(dir, \"r.txt\");\n        String text = report.getName();\n        assertNotNull(text);",
        );
        assert_eq!(m.instantiations, vec![Instantiation { type_name: "File".into(), line: 4 }]);
        assert!(m.file_typed_locals.contains(&"report".to_string()));
        assert_eq!(m.file_api_calls.len(), 1);
        assert_eq!(m.file_api_calls[0].method_name, "getName");
    }

    #[test]
    fn chained_call_has_no_receiver() {
        let m = scenario_facts("        new Thread(task).start();\n        assertTrue(ok);");
        let start = m.candidate_calls.iter().find(|c| c.method_name == "start").unwrap();
        assert_eq!(start.receiver, None);
        assert_eq!(m.instantiations[0].type_name, "Thread");
    }

    #[test]
    fn numeric_literal_assert_args_counted() {
        let m = scenario_facts(
            "        assertEquals(5, total);\n        assertEquals(\"5\", name);\n        assertEquals(-2.5f, ratio);\n        assertEquals(EXPECTED, other);",
        );
        assert_eq!(m.numeric_literal_assert_args, 2);
    }

    #[test]
    fn assigned_names_skip_locals_and_foreign_fields() {
        let src = r#"
            public class FixtureTest {
                private Parser parser;
                private Cache cache;
                public void setUp() {
                    parser = new Parser();
                    this.cache = new Cache();
                    int local = 0;
                    local = 5;
                    other.field = 1;
                }
                @Test
                public void one() { assertNotNull(parser); }
            }
        "#;
        let f = facts(src);
        let setup = f.helper_methods.iter().find(|m| m.name == "setUp").unwrap();
        assert!(setup.assigned_names.contains("parser"));
        assert!(setup.assigned_names.contains("cache"));
        assert!(!setup.assigned_names.contains("local"));
        assert!(!setup.assigned_names.contains("field"));
        assert_eq!(f.setup_fields.iter().cloned().collect::<Vec<_>>(), vec!["cache", "parser"]);
    }

    #[test]
    fn junit3_test_methods_identified_without_annotations() {
        let src = r#"
            public class TestLocks extends TestCase {
                public void testOne() { assertTrue(true); }
                public void testWith(int arg) { }
                public void helper() { }
            }
        "#;
        let f = facts(src);
        assert!(f.is_test_class);
        assert_eq!(f.methods.len(), 1);
        assert_eq!(f.methods[0].name, "testOne");
        assert_eq!(f.helper_methods.len(), 2);
    }

    #[test]
    fn annotated_test_methods_identified() {
        let src = r#"
            public class PlainTest {
                @Test(timeout = 2000)
                public void testIssue() { run(); }
                public void util() { }
            }
        "#;
        let f = facts(src);
        assert!(f.is_test_class);
        assert_eq!(f.methods.len(), 1);
        assert_eq!(f.methods[0].name, "testIssue");
        assert!(f.methods[0].annotations[0].parameters.contains_key("timeout"));
    }

    #[test]
    fn expected_param_detection() {
        let src = r#"
            public class ExceptionsTest {
                @Test(expected = IllegalStateException.class)
                public void boom() { trigger(); }
            }
        "#;
        let f = facts(src);
        assert!(f.methods[0].has_expected_param());
    }

    #[test]
    fn loc_counts_code_lines_only() {
        let src = "public class LocTest {\n    @Test\n    public void spaced() {\n\n        // comment only\n        run();\n\n        assertTrue(ok);\n    }\n}\n";
        let f = facts(src);
        let m = &f.methods[0];
        // signature, run();, assertTrue, closing brace
        assert_eq!(m.loc, 4);
        assert!(m.loc <= m.end_line - m.start_line + 1);
    }

    #[test]
    fn empty_body_has_zero_statements() {
        let m = scenario_facts("        // only a comment");
        assert_eq!(m.executable_statement_count, 0);
        assert_eq!(m.loc, 2); // signature line and closing brace
    }

    #[test]
    fn call_lines_stay_within_method_span() {
        let m = scenario_facts("        first();\n        second(nested(third()));");
        for c in &m.candidate_calls {
            assert!(c.line >= m.start_line && c.line <= m.end_line);
        }
        assert_eq!(m.candidate_calls.len(), 4);
    }

    #[test]
    fn try_with_resources_tracks_file_locals() {
        let m = scenario_facts(
            "        try (File handle = open()) {\n            use(handle);\n        }\n        assertTrue(ok);",
        );
        assert!(m.file_typed_locals.contains(&"handle".to_string()));
    }

    #[test]
    fn file_typed_parameters_are_tracked() {
        let src = r#"
            public class ParamTest {
                @Test
                public void check(File spool) {
                    assertTrue(spool.exists());
                }
            }
        "#;
        let f = facts(src);
        let m = &f.methods[0];
        assert!(m.file_typed_locals.contains(&"spool".to_string()));
        assert_eq!(m.file_api_calls.len(), 1);
        assert_eq!(m.file_api_calls[0].method_name, "exists");
    }
}
