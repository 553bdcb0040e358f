//! Regenerates the committed fixture files. Run explicitly with
//! `cargo test -p avfq-cli --release -- --ignored regenerate_fixtures`.
//!
//! Fixtures hold squarefree Weil polynomials enumerated locally by root
//! location (a superset of the true isogeny-class lists for g >= 2, since
//! existence is not checked here); g = 3 lists are strided down to a fixed
//! size to keep the offline test corpus fast. Files follow the same
//! `{"data": [...]}` shape as the remote API responses.

use std::fmt::Write as _;

use avfq::weil::enumerate_weil_candidates;
use avfq::BigInt;
use avfq_cli::lmfdb::{default_fixtures_dir, fixture_file_name, lmfdb_label};

const G3_MAX_PER_Q: usize = 120;

#[test]
#[ignore = "writes the committed fixture files; run on demand"]
fn regenerate_fixtures() {
    let dir = default_fixtures_dir();
    std::fs::create_dir_all(&dir).unwrap();
    for (g, q, cap) in [
        (2usize, 2i64, usize::MAX),
        (2, 3, usize::MAX),
        (2, 4, usize::MAX),
        (2, 5, usize::MAX),
        (3, 2, G3_MAX_PER_Q),
        (3, 3, G3_MAX_PER_Q),
        (3, 4, G3_MAX_PER_Q),
        (3, 5, G3_MAX_PER_Q),
    ] {
        let q = BigInt::from(q);
        let all = enumerate_weil_candidates(g, &q).unwrap();
        // Deterministic evenly-spaced subset when over the cap.
        let selected: Vec<_> = if all.len() <= cap {
            all.iter().collect()
        } else {
            let stride = all.len().div_ceil(cap);
            all.iter().step_by(stride).collect()
        };
        let mut json = String::from("{\"data\": [\n");
        for (i, w) in selected.iter().enumerate() {
            let poly: Vec<BigInt> = (0..=2 * g).map(|k| w.h().coeff(k)).collect();
            let label = lmfdb_label(g, &q, &poly);
            let coeffs: Vec<String> = poly.iter().map(|c| c.to_string()).collect();
            write!(
                json,
                "  {{\"label\": \"{label}\", \"g\": {g}, \"q\": {q}, \"poly\": [{}]}}{}\n",
                coeffs.join(", "),
                if i + 1 < selected.len() { "," } else { "" }
            )
            .unwrap();
        }
        json.push_str("]}\n");
        let path = dir.join(fixture_file_name(g, &q));
        std::fs::write(&path, json).unwrap();
        println!(
            "wrote {} ({} of {} classes)",
            path.display(),
            selected.len(),
            all.len()
        );
    }
}
