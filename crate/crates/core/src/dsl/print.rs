use crate::family::{ChainEntry, Count, FamilyPresentation, Shape};

/// Canonical text of one entry, without the trailing `;`.
pub fn print_entry(e: &ChainEntry) -> String {
    let kw = e.orientation.keyword();
    match &e.shape {
        Shape::Single { value, count } => match count {
            Count::Fin(1) => format!("{kw}({value})"),
            Count::Fin(c) => format!("{kw}({value}) x {c}"),
            Count::Inf => format!("{kw}({value}) x inf"),
        },
        Shape::Progression(p) => {
            let mut body = Vec::new();
            if !p.gamma.is_zero() {
                body.push(p.gamma.to_string());
            }
            if p.a > 0 {
                body.push(p.a.to_string());
            }
            body.push(format!("{}*n", p.d));
            let mut s = format!("{kw}({}) for n in nat", body.join(" + "));
            if p.count_per_member != 1 {
                s.push_str(&format!(" x {}", p.count_per_member));
            }
            s
        }
    }
}

/// Canonical text of a family, one statement per line.
pub fn print(p: &FamilyPresentation) -> String {
    p.entries
        .iter()
        .map(|e| format!("{};\n", print_entry(e)))
        .collect()
}
