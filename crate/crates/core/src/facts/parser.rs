//! Structural pass: top-level types, members, annotations, signatures.
//!
//! Works on the raw token stream; method bodies are kept as token ranges
//! for the body scanner in `extract`. Nested types are skipped wholesale
//! so their members never leak into the enclosing class's fact table.

use std::collections::BTreeMap;

use super::lexer::{Token, TokenKind};
use super::{AnnotationFact, FieldFact};

const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "synchronized", "native",
    "strictfp", "transient", "volatile", "default",
];

pub(crate) struct CompilationUnit {
    pub package: Option<String>,
    pub types: Vec<RawType>,
}

pub(crate) struct RawType {
    pub name: String,
    /// Simple name of the extends clause, if any.
    pub superclass: Option<String>,
    pub annotations: Vec<AnnotationFact>,
    pub fields: Vec<FieldFact>,
    pub constructors: Vec<RawMethod>,
    pub methods: Vec<RawMethod>,
}

pub(crate) struct RawMethod {
    pub name: String,
    pub annotations: Vec<AnnotationFact>,
    /// Token range of the parameter list, inside the parentheses.
    pub params: (usize, usize),
    /// Token range of the body, inside the braces; `None` for abstract
    /// or interface methods.
    pub body: Option<(usize, usize)>,
    /// Line of the first signature token (annotations excluded).
    pub start_line: usize,
    /// Line of the closing brace (or of the `;` for body-less methods).
    pub end_line: usize,
}

pub(crate) fn is_modifier(text: &str) -> bool {
    MODIFIERS.contains(&text)
}

/// Parses the token stream of one file into its top-level types.
pub(crate) fn parse_compilation_unit(tokens: &[Token]) -> CompilationUnit {
    let mut i = 0;
    let mut package = None;
    let mut types = Vec::new();

    while i < tokens.len() {
        let t = &tokens[i];
        if t.is("package") {
            let (name, next) = read_dotted_name(tokens, i + 1);
            package = Some(name);
            i = skip_past(tokens, next, ";");
        } else if t.is("import") {
            i = skip_past(tokens, i, ";");
        } else {
            let annotations = collect_annotations_peek(tokens, &mut i);
            while i < tokens.len() && is_modifier(&tokens[i].text) {
                i += 1;
            }
            if i < tokens.len()
                && (tokens[i].is("class") || tokens[i].is("interface") || tokens[i].is("enum"))
            {
                if let Some((ty, next)) = parse_type_decl(tokens, i, annotations) {
                    types.push(ty);
                    i = next;
                    continue;
                }
            }
            i += 1;
        }
    }

    CompilationUnit { package, types }
}

/// Parses `class Name extends Super ... { members }` starting at the
/// `class`/`interface`/`enum` keyword. Returns the type and the index
/// just past its closing brace.
fn parse_type_decl(
    tokens: &[Token],
    kw_idx: usize,
    annotations: Vec<AnnotationFact>,
) -> Option<(RawType, usize)> {
    let mut i = kw_idx + 1;
    let name = tokens.get(i).filter(|t| t.kind == TokenKind::Ident)?.text.clone();
    i += 1;
    if i < tokens.len() && tokens[i].is("<") {
        i = skip_angle_span(tokens, i);
    }

    let mut superclass = None;
    while i < tokens.len() && !tokens[i].is("{") {
        if tokens[i].is("extends") {
            let (dotted, next) = read_dotted_name(tokens, i + 1);
            superclass = dotted.rsplit('.').next().map(str::to_string);
            i = next;
            if i < tokens.len() && tokens[i].is("<") {
                i = skip_angle_span(tokens, i);
            }
        } else {
            i += 1;
        }
    }
    if i >= tokens.len() {
        return None;
    }

    let open = i;
    let close = match_brace(tokens, open)?;
    let mut ty = RawType {
        name,
        superclass,
        annotations,
        fields: Vec::new(),
        constructors: Vec::new(),
        methods: Vec::new(),
    };
    scan_members(tokens, open + 1, close, &mut ty);
    Some((ty, close + 1))
}

/// Scans the class body range for fields, constructors, and methods.
fn scan_members(tokens: &[Token], start: usize, end: usize, ty: &mut RawType) {
    let mut i = start;
    while i < end {
        if tokens[i].is(";") {
            i += 1;
            continue;
        }

        let annotations = collect_annotations_peek(tokens, &mut i);
        let member_start = i;
        while i < end && is_modifier(&tokens[i].text) {
            i += 1;
        }
        if i >= end {
            break;
        }

        // Initializer block (`static { ... }` or `{ ... }`).
        if tokens[i].is("{") {
            i = match_brace(tokens, i).map_or(end, |c| c + 1);
            continue;
        }

        // Nested type: skip its entire body.
        if tokens[i].is("class") || tokens[i].is("interface") || tokens[i].is("enum") {
            let mut j = i + 1;
            while j < end && !tokens[j].is("{") {
                j += 1;
            }
            i = match_brace(tokens, j).map_or(end, |c| c + 1);
            continue;
        }

        // Generic method type parameters.
        if tokens[i].is("<") {
            i = skip_angle_span(tokens, i);
        }
        let sig_start = i;

        match find_member_boundary(tokens, i, end) {
            Some((idx, Boundary::Paren)) => {
                let name = match member_name_before(tokens, idx) {
                    Some(n) => n,
                    None => {
                        i = idx + 1;
                        continue;
                    }
                };
                let params_close = match match_paren(tokens, idx) {
                    Some(c) => c,
                    None => {
                        i = idx + 1;
                        continue;
                    }
                };
                // Constructor: the name is the first non-modifier signature
                // token and equals the class name.
                let is_ctor = idx == sig_start + 1 && name == ty.name;

                // Skip throws clause etc. up to `{` or `;`.
                let mut j = params_close + 1;
                while j < end && !tokens[j].is("{") && !tokens[j].is(";") {
                    j += 1;
                }
                let (body, end_line, next) = if j < end && tokens[j].is("{") {
                    match match_brace(tokens, j) {
                        Some(c) => ((Some((j + 1, c))), tokens[c].line, c + 1),
                        None => (None, tokens[j].line, end),
                    }
                } else {
                    (None, tokens.get(j).map_or(0, |t| t.line), j + 1)
                };

                let method = RawMethod {
                    name,
                    annotations,
                    params: (idx + 1, params_close),
                    body,
                    start_line: tokens[member_start.min(sig_start)].line,
                    end_line,
                };
                if is_ctor {
                    ty.constructors.push(method);
                } else {
                    ty.methods.push(method);
                }
                i = next;
            }
            Some((idx, Boundary::FieldLike)) => {
                let next = parse_field_decl(tokens, sig_start, idx, end, &mut ty.fields);
                i = next;
            }
            None => break,
        }
    }
}

enum Boundary {
    /// `(` reached first: method or constructor.
    Paren,
    /// `=`, `;`, or top-level `,` reached first: field declaration.
    FieldLike,
}

/// Finds which boundary token appears first at member depth, skipping
/// generic spans so commas inside `Map<A, B>` never look like boundaries.
fn find_member_boundary(tokens: &[Token], start: usize, end: usize) -> Option<(usize, Boundary)> {
    let mut i = start;
    while i < end {
        let t = &tokens[i];
        if t.is("<") {
            i = skip_angle_span(tokens, i);
            continue;
        }
        if t.is("(") {
            return Some((i, Boundary::Paren));
        }
        if t.is("=") || t.is(";") || t.is(",") {
            return Some((i, Boundary::FieldLike));
        }
        i += 1;
    }
    None
}

/// The member name is the identifier immediately before its `(` or
/// before the field boundary.
fn member_name_before(tokens: &[Token], boundary: usize) -> Option<String> {
    if boundary == 0 {
        return None;
    }
    let t = &tokens[boundary - 1];
    (t.kind == TokenKind::Ident).then(|| t.text.clone())
}

/// Parses one field declaration (possibly multiple declarators) starting
/// at `sig_start`, with the first boundary at `first_boundary`. Returns
/// the index just past the terminating `;`.
fn parse_field_decl(
    tokens: &[Token],
    sig_start: usize,
    first_boundary: usize,
    end: usize,
    fields: &mut Vec<FieldFact>,
) -> usize {
    let type_name = simple_type_name(tokens, sig_start, first_boundary);
    let mut i = first_boundary;
    if let Some(name) = member_name_before(tokens, first_boundary) {
        fields.push(FieldFact { name, type_name: type_name.clone() });
    }

    // Walk `= init , next = init , ... ;` at top level.
    loop {
        if i >= end {
            return end;
        }
        if tokens[i].is(";") {
            return i + 1;
        }
        if tokens[i].is(",") {
            if let Some(t) = tokens.get(i + 1).filter(|t| t.kind == TokenKind::Ident) {
                fields.push(FieldFact { name: t.text.clone(), type_name: type_name.clone() });
            }
            i += 2;
            continue;
        }
        // `=`: skip the initializer expression.
        i += 1;
        let mut depth = 0usize;
        while i < end {
            let t = &tokens[i];
            if t.is("(") || t.is("[") || t.is("{") {
                depth += 1;
            } else if t.is(")") || t.is("]") || t.is("}") {
                depth = depth.saturating_sub(1);
            } else if t.is("<") && depth == 0 {
                if let Some(g) = try_angle_span(tokens, i) {
                    i = g;
                    continue;
                }
            } else if depth == 0 && (t.is(",") || t.is(";")) {
                break;
            }
            i += 1;
        }
    }
}

/// Simple (unqualified, ungeneric) name of the base type in a range:
/// the last identifier of the leading type chain.
fn simple_type_name(tokens: &[Token], start: usize, boundary: usize) -> String {
    let mut last = None;
    let mut i = start;
    // The declarator name itself sits right before the boundary; stop early.
    let stop = boundary.saturating_sub(1);
    while i < stop {
        let t = &tokens[i];
        if t.is("<") {
            i = skip_angle_span(tokens, i);
            continue;
        }
        if t.kind == TokenKind::Ident && !is_modifier(&t.text) {
            last = Some(t.text.clone());
        }
        i += 1;
    }
    last.unwrap_or_default()
}

/// Collects a run of annotations, advancing `i` past them.
fn collect_annotations_peek(tokens: &[Token], i: &mut usize) -> Vec<AnnotationFact> {
    let mut out = Vec::new();
    while *i < tokens.len() && tokens[*i].is("@") {
        let (fact, next) = parse_annotation(tokens, *i);
        if let Some(fact) = fact {
            out.push(fact);
        }
        *i = next;
    }
    out
}

/// Parses `@Name` or `@pkg.Name(args)` starting at `@`. Returns the fact
/// and the index just past the annotation.
fn parse_annotation(tokens: &[Token], at_idx: usize) -> (Option<AnnotationFact>, usize) {
    let (dotted, mut i) = read_dotted_name(tokens, at_idx + 1);
    if dotted.is_empty() {
        return (None, at_idx + 1);
    }
    let name = dotted.rsplit('.').next().unwrap_or(&dotted).to_string();
    let mut parameters = BTreeMap::new();

    if i < tokens.len() && tokens[i].is("(") {
        if let Some(close) = match_paren(tokens, i) {
            for part in split_top_level(tokens, i + 1, close) {
                let (start, end) = part;
                if start >= end {
                    continue;
                }
                // `key = value` or a single positional value.
                if end - start >= 2
                    && tokens[start].kind == TokenKind::Ident
                    && tokens[start + 1].is("=")
                {
                    parameters.insert(
                        tokens[start].text.clone(),
                        normalize_tokens(&tokens[start + 2..end]),
                    );
                } else {
                    parameters.insert("value".to_string(), normalize_tokens(&tokens[start..end]));
                }
            }
            i = close + 1;
        }
    }

    (Some(AnnotationFact { name, parameters }), i)
}

/// Reads `a.b.c` starting at `start`; returns the dotted text and the
/// index past the chain.
fn read_dotted_name(tokens: &[Token], start: usize) -> (String, usize) {
    let mut parts = Vec::new();
    let mut i = start;
    while i < tokens.len() && tokens[i].kind == TokenKind::Ident {
        parts.push(tokens[i].text.clone());
        if tokens.get(i + 1).is_some_and(|t| t.is("."))
            && tokens.get(i + 2).is_some_and(|t| t.kind == TokenKind::Ident)
        {
            i += 2;
        } else {
            i += 1;
            break;
        }
    }
    (parts.join("."), i)
}

fn skip_past(tokens: &[Token], from: usize, text: &str) -> usize {
    let mut i = from;
    while i < tokens.len() && !tokens[i].is(text) {
        i += 1;
    }
    i + 1
}

/// Index of the `}` matching the `{` at `open`.
pub(crate) fn match_brace(tokens: &[Token], open: usize) -> Option<usize> {
    match_pair(tokens, open, "{", "}")
}

/// Index of the `)` matching the `(` at `open`.
pub(crate) fn match_paren(tokens: &[Token], open: usize) -> Option<usize> {
    match_pair(tokens, open, "(", ")")
}

fn match_pair(tokens: &[Token], open: usize, open_text: &str, close_text: &str) -> Option<usize> {
    if !tokens.get(open)?.is(open_text) {
        return None;
    }
    let mut depth = 0usize;
    for (i, t) in tokens.iter().enumerate().skip(open) {
        if t.is(open_text) {
            depth += 1;
        } else if t.is(close_text) {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// Skips a generic span starting at `<`, or just the `<` when the span
/// is unbalanced. Returns the index past the span.
pub(crate) fn skip_angle_span(tokens: &[Token], lt_idx: usize) -> usize {
    try_angle_span(tokens, lt_idx).unwrap_or(lt_idx + 1)
}

/// Attempts to read a generic span starting at `<`; the span may contain
/// only tokens legal inside type arguments. Returns the index past the
/// closing `>` when it parses as generics, `None` when `<` is likely a
/// comparison operator. `>>`/`>>>` close multiple levels.
pub(crate) fn try_angle_span(tokens: &[Token], lt_idx: usize) -> Option<usize> {
    let mut depth: isize = 1;
    let mut i = lt_idx + 1;
    let limit = tokens.len().min(lt_idx + 256);
    while i < limit {
        let t = &tokens[i];
        match t.text.as_str() {
            "<" => depth += 1,
            ">" => depth -= 1,
            ">>" => depth -= 2,
            ">>>" => depth -= 3,
            "." | "," | "?" | "[" | "]" | "&" | "extends" | "super" => {}
            _ if t.kind == TokenKind::Ident => {}
            _ => return None,
        }
        i += 1;
        if depth <= 0 {
            return Some(i);
        }
    }
    None
}

/// Splits a token range into top-level comma-separated parts, respecting
/// parentheses, brackets, braces, and generic spans.
pub(crate) fn split_top_level(tokens: &[Token], start: usize, end: usize) -> Vec<(usize, usize)> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut part_start = start;
    let mut i = start;
    while i < end {
        let t = &tokens[i];
        if t.is("(") || t.is("[") || t.is("{") {
            depth += 1;
        } else if t.is(")") || t.is("]") || t.is("}") {
            depth = depth.saturating_sub(1);
        } else if t.is("<") && depth == 0 {
            if let Some(g) = try_angle_span(tokens, i) {
                i = g;
                continue;
            }
        } else if t.is(",") && depth == 0 {
            parts.push((part_start, i));
            part_start = i + 1;
        }
        i += 1;
    }
    if part_start < end {
        parts.push((part_start, end));
    }
    parts
}

/// Joins token texts into a canonical single-line form: single spaces,
/// except dots glue their neighbors and call/index punctuation hugs the
/// preceding token. `sb . toString ( )` renders as `sb.toString()`.
pub(crate) fn normalize_tokens(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        let text = t.text.as_str();
        if i > 0 {
            let prev = tokens[i - 1].text.as_str();
            let glue_prev = matches!(prev, "." | "(" | "[" | "@");
            let glue_this = matches!(text, "." | "," | ")" | "]" | ";");
            let call_paren = matches!(text, "(" | "[")
                && (tokens[i - 1].kind == TokenKind::Ident
                    || matches!(prev, ")" | "]")
                    || tokens[i - 1].kind == TokenKind::Str);
            if !(glue_prev || glue_this || call_paren) {
                out.push(' ');
            }
        }
        out.push_str(text);
    }
    out
}
