use laxcomma::cli::format::{
    CategoryBlock, CommandBlock, FunctorBlock, MonadBlock, NatBlock, PoCategoryBlock, PreorderBlock,
};
use laxcomma::cli::{parse_spec_file, serialize_spec_file, Block, SpecFile};
use proptest::prelude::*;

fn ident() -> impl Strategy<Value = String> {
    "[a-z0-9*][a-z0-9_'*-]{0,4}".prop_filter("no arrow inside", |s| !s.contains("->") && !s.ends_with('-'))
}

fn idents(max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(ident(), 0..max)
}

fn pairs(max: usize) -> impl Strategy<Value = Vec<(String, String)>> {
    prop::collection::vec((ident(), ident()), 0..max)
}

fn triples(max: usize) -> impl Strategy<Value = Vec<(String, String, String)>> {
    prop::collection::vec((ident(), ident(), ident()), 0..max)
}

fn block() -> impl Strategy<Value = Block> {
    prop_oneof![
        (ident(), idents(4), triples(4), pairs(3), triples(3), any::<bool>()).prop_map(
            |(name, objects, morphisms, identities, compose, thin)| {
                Block::Category(CategoryBlock { name, objects, morphisms, identities, compose, thin })
            }
        ),
        (ident(), idents(4), pairs(4)).prop_map(|(name, elements, le)| Block::Preorder(PreorderBlock {
            name,
            elements,
            le
        })),
        (ident(), ident(), ident(), pairs(3), pairs(3)).prop_map(|(name, dom, cod, objects, morphisms)| {
            Block::Functor(FunctorBlock { name, dom, cod, objects, morphisms })
        }),
        (ident(), ident(), ident(), pairs(3)).prop_map(|(name, src, tgt, components)| Block::Nat(NatBlock {
            name,
            src,
            tgt,
            components
        })),
        (ident(), ident(), pairs(3)).prop_map(|(name, base, le)| Block::PoCategory(PoCategoryBlock { name, base, le })),
        (ident(), ident(), ident(), pairs(3), pairs(3))
            .prop_map(|(name, on, functor, eta, mu)| { Block::Monad(MonadBlock { name, on, functor, eta, mu }) }),
        (ident(), ident(), idents(3)).prop_map(|(name, op, args)| Block::Command(CommandBlock { name, op, args })),
    ]
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(blocks in prop::collection::vec(block(), 0..6)) {
        let spec = SpecFile { lines: vec![0; blocks.len()], blocks };
        let text = serialize_spec_file(&spec);
        let back = parse_spec_file(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &spec, "{}", text);
        prop_assert_eq!(serialize_spec_file(&back), text);
    }
}
