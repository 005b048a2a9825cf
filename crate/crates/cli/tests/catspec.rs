use std::collections::BTreeMap;

use catlift_cli::catspec::{emit, parse, Block, Document, Entry, KINDS};
use proptest::prelude::*;

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_*>.]{0,5}".prop_filter("reserved", |s| s != "end")
}

fn block() -> impl Strategy<Value = Block> {
    (
        prop::sample::select(KINDS.to_vec()),
        ident(),
        prop::collection::btree_map(ident(), ident(), 0..3),
        prop::collection::vec(prop::collection::vec(ident(), 1..4), 0..6),
    )
        .prop_map(|(kind, name, params, entries)| Block {
            kind: kind.to_string(),
            name,
            params: params.into_iter().collect::<BTreeMap<_, _>>(),
            entries: entries.into_iter().map(|tokens| Entry { tokens, line: 0 }).collect(),
            line: 0,
        })
}

fn document() -> impl Strategy<Value = Document> {
    prop::collection::vec(block(), 0..5).prop_map(|mut blocks| {
        let mut seen = std::collections::BTreeSet::new();
        blocks.retain(|b| seen.insert((b.kind.clone(), b.name.clone())));
        Document { blocks }
    })
}

proptest! {
    #[test]
    fn emit_then_parse_roundtrips(doc in document()) {
        let text = emit(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(emit(&back), text);
    }

    /// Comments, blank lines and block order do not change the document.
    #[test]
    fn layout_is_irrelevant(doc in document(), seed in any::<u64>()) {
        let text = emit(&doc);
        let mut chunks: Vec<&str> = text.split("\n\n").collect();
        let k = chunks.len();
        chunks.rotate_left(seed as usize % k.max(1));
        let noisy = chunks.join("\n# a comment\n\n");
        prop_assert_eq!(parse(&noisy).unwrap(), doc);
    }
}
