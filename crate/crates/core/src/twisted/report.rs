use serde_json::{json, Value};

use crate::pc::PcPresentation;

use super::{InfinityWitness, ReidemeisterResult};

fn vector_string(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn witness_string(g: &PcPresentation, w: &InfinityWitness) -> String {
    match w {
        InfinityWitness::DegenerateLattice {
            layer,
            representative,
            vector,
        } => format!(
            "layer {layer}, kernel witness {} over class of {}",
            vector_string(vector),
            g.word_string(representative)
        ),
        InfinityWitness::FixedOnFactor {
            factor,
            vector,
            element,
        } => format!(
            "upper central factor {factor}, fixed vector {} from {}",
            vector_string(vector),
            g.word_string(element)
        ),
    }
}

/// `R = n` or `R = infinite (...)`, with one representative per line when
/// `reps` is set.
pub fn render_result(g: &PcPresentation, r: &ReidemeisterResult, reps: bool) -> String {
    match r {
        ReidemeisterResult::Finite { count, classes } => {
            let mut s = format!("R = {count}\n");
            if reps {
                for c in classes {
                    s.push_str("  ");
                    s.push_str(&g.word_string(&c.representative));
                    s.push('\n');
                }
            }
            s
        }
        ReidemeisterResult::Infinite(w) => format!("R = infinite ({})\n", witness_string(g, w)),
    }
}

pub fn witness_json(g: &PcPresentation, w: &InfinityWitness) -> Value {
    match w {
        InfinityWitness::DegenerateLattice {
            layer,
            representative,
            vector,
        } => json!({
            "kind": "degenerate_lattice",
            "layer": layer,
            "representative": g.word_string(representative),
            "vector": vector,
        }),
        InfinityWitness::FixedOnFactor {
            factor,
            vector,
            element,
        } => json!({
            "kind": "fixed_on_factor",
            "factor": factor,
            "vector": vector,
            "element": g.word_string(element),
        }),
    }
}

/// `result`, `count`, `representatives` and `witness` fields.
pub fn result_json(g: &PcPresentation, r: &ReidemeisterResult) -> Value {
    match r {
        ReidemeisterResult::Finite { count, classes } => json!({
            "result": "finite",
            "count": count,
            "representatives": classes.iter().map(|c| g.word_string(&c.representative)).collect::<Vec<_>>(),
            "witness": Value::Null,
        }),
        ReidemeisterResult::Infinite(w) => json!({
            "result": "infinite",
            "count": Value::Null,
            "representatives": Vec::<String>::new(),
            "witness": witness_json(g, w),
        }),
    }
}
