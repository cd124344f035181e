//! Every example must keep running against the current API.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(classic_schedules);
example!(constraint_curve);
example!(full_state_vector);
example!(hamming_secret);
example!(iteration_bounds);
example!(rotation_algebra);
example!(solve_alpha_fixed);
example!(solve_beta_fixed);
