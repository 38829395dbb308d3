//! Every example in `examples/` runs to completion.

macro_rules! example {
    ($test:ident, $file:literal) => {
        #[test]
        fn $test() {
            mod ex {
                include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
                pub fn run() -> blowdown::Result<()> {
                    main()
                }
            }
            ex::run().expect(concat!($file, " should run"));
        }
    };
}

example!(projective_resolution, "projective_resolution.rs");
example!(torsion_pair, "torsion_pair.rs");
example!(perverse_truncation, "perverse_truncation.rs");
example!(semiorthogonal, "semiorthogonal.rs");
example!(toric_cohomology, "toric_cohomology.rs");
example!(json_documents, "json_documents.rs");
example!(blowdown_pipeline, "blowdown.rs");
