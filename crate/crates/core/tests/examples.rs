//! Every example also runs as a test.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            #![allow(dead_code)]
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect(concat!(stringify!($name), " runs"));
        }
    };
}

example!(worked_example);
example!(csr_compose);
example!(snapshot_store);
example!(steiner_schedule);
example!(incremental_queries);
example!(baseline_vs_commongraph);
example!(cli_workflow);
