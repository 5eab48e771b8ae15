//! Plain-text views of certificates, strategies and collapse sequences.

use std::fmt::Write;

use nonevade::certifier::Certificate;
use nonevade::complex::CollapseSequence;
use nonevade::game::Strategy;

pub fn certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    certificate_into(cert, "", &mut out);
    out
}

fn certificate_into(cert: &Certificate, indent: &str, out: &mut String) {
    let deeper = format!("{indent}  ");
    match cert {
        Certificate::Leaf { vertex } => {
            let _ = writeln!(out, "leaf {vertex}");
        }
        Certificate::Prune { removed, child } => {
            let _ = write!(out, "prune {{{}}}\n{deeper}", removed.join(", "));
            certificate_into(child, &deeper, out);
        }
        Certificate::Split {
            vertex,
            mode,
            z,
            dl,
            lk,
        } => {
            let mode = serde_json::to_value(mode).expect("modes serialize");
            let mode = mode.as_str().unwrap_or_default();
            let _ = write!(out, "split {vertex} ({mode}, z = {z})\n{deeper}dl: ");
            certificate_into(dl, &deeper, out);
            let _ = write!(out, "{deeper}lk: ");
            certificate_into(lk, &deeper, out);
        }
    }
}

pub fn strategy(strategy: &Strategy) -> String {
    let mut out = String::new();
    strategy_into(strategy, "", &mut out);
    out
}

fn strategy_into(strategy: &Strategy, indent: &str, out: &mut String) {
    match strategy {
        Strategy::Answer { is_chain } => {
            let _ = writeln!(out, "{}", if *is_chain { "chain" } else { "not a chain" });
        }
        Strategy::Query { vertex, yes, no } => {
            let deeper = format!("{indent}  ");
            let _ = write!(out, "{vertex}?\n{deeper}yes: ");
            strategy_into(yes, &deeper, out);
            let _ = write!(out, "{deeper}no: ");
            strategy_into(no, &deeper, out);
        }
    }
}

pub fn collapses(seq: &CollapseSequence) -> String {
    let mut out = String::new();
    for pair in &seq.pairs {
        let _ = writeln!(
            out,
            "{{{}}} < {{{}}}",
            pair.free_face.join(", "),
            pair.coface.join(", ")
        );
    }
    let _ = writeln!(out, "final: {}", seq.final_vertex);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nonevade::certifier::certify;
    use nonevade::lattice::{generate, Family, GenerateParams};

    #[test]
    fn chain_certificate_text() {
        let l = generate(Family::Chain, &GenerateParams::new(4)).unwrap();
        let (cert, _) = certify(&l, "a").unwrap();
        assert_eq!(
            certificate(&cert),
            "split b (case2_coatom, z = a)\n  dl: leaf a\n  lk: leaf a\n"
        );
    }
}
