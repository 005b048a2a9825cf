use std::collections::BTreeMap;
use std::fmt::{self, Write};

/// Block kinds, in the order they are documented.
pub const KINDS: [&str; 10] =
    ["category", "functor", "group", "action", "involution", "diagram", "sset", "rsset", "operad", "complex"];

#[derive(Clone, Debug)]
pub struct Entry {
    pub tokens: Vec<String>,
    pub line: usize,
}

impl Entry {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub kind: String,
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
    pub line: usize,
}

impl Block {
    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }
}

/// A parsed document in canonical order: blocks by `(kind, name)`, entries
/// lexicographically.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

/// Equality ignores source positions.
impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        emit(self) == emit(other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn tokens(line: &str) -> Vec<String> {
    let content = line.split('#').next().unwrap_or("");
    content.split_whitespace().map(str::to_string).collect()
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut open: Option<Block> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        let err = |message: String| Err(ParseError { line, message });
        match open.as_mut() {
            None => {
                let kind = toks[0].as_str();
                if !KINDS.contains(&kind) {
                    return err(format!("expected a block kind, found `{kind}`"));
                }
                let Some(name) = toks.get(1) else { return err(format!("`{kind}` block needs a name")) };
                if name.contains('=') {
                    return err(format!("`{kind}` block needs a name before its parameters"));
                }
                let mut params = BTreeMap::new();
                for t in &toks[2..] {
                    let Some((key, value)) = t.split_once('=') else {
                        return err(format!("expected key=value, found `{t}`"));
                    };
                    if key.is_empty() || value.is_empty() || params.insert(key.to_string(), value.to_string()).is_some() {
                        return err(format!("bad or repeated parameter `{t}`"));
                    }
                }
                if blocks.iter().any(|b| b.kind == kind && b.name == *name) {
                    return err(format!("duplicate {kind} `{name}`"));
                }
                open = Some(Block { kind: kind.to_string(), name: name.clone(), params, entries: vec![], line });
            }
            Some(block) => {
                if toks == ["end"] {
                    blocks.push(open.take().unwrap());
                } else if toks[0] == "end" {
                    return err("`end` takes no arguments".into());
                } else {
                    block.entries.push(Entry { tokens: toks, line });
                }
            }
        }
    }
    if let Some(b) = open {
        return Err(ParseError { line: b.line, message: format!("{} `{}` is never closed with `end`", b.kind, b.name) });
    }
    for b in &mut blocks {
        b.entries.sort_by_key(|e| e.text());
    }
    blocks.sort_by(|a, b| (&a.kind, &a.name).cmp(&(&b.kind, &b.name)));
    Ok(Document { blocks })
}

/// Canonical text: one block after another separated by a blank line,
/// parameters sorted by key, entries indented by two spaces.
pub fn emit(doc: &Document) -> String {
    let mut blocks: Vec<&Block> = doc.blocks.iter().collect();
    blocks.sort_by(|a, b| (&a.kind, &a.name).cmp(&(&b.kind, &b.name)));
    let mut out = String::new();
    for (k, b) in blocks.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        write!(out, "{} {}", b.kind, b.name).unwrap();
        for (key, value) in &b.params {
            write!(out, " {key}={value}").unwrap();
        }
        out.push('\n');
        let mut lines: Vec<String> = b.entries.iter().map(Entry::text).collect();
        lines.sort();
        for l in lines {
            writeln!(out, "  {l}").unwrap();
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ARROW: &str = "# the walking arrow\ncategory arrow\n  object b\n  object a\n  morphism f a b\nend\n";

    #[test]
    fn canonical_form_is_idempotent() {
        let doc = parse(ARROW).unwrap();
        let text = emit(&doc);
        assert_eq!(text, "category arrow\n  morphism f a b\n  object a\n  object b\nend\n");
        assert_eq!(emit(&parse(&text).unwrap()), text);
        assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse("category c\n  object a\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse("category c\nend\nwidget w\nend\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("widget"));
        let e = parse("diagram d shape\nend\n").unwrap_err();
        assert!(e.message.contains("key=value"));
    }

    #[test]
    fn blocks_sort_by_kind_then_name() {
        let doc = parse("group g\nend\ncategory z\nend\ncategory a\nend\n").unwrap();
        let order: Vec<_> = doc.blocks.iter().map(|b| format!("{} {}", b.kind, b.name)).collect();
        assert_eq!(order, ["category a", "category z", "group g"]);
    }
}
