//! Macaulay2 scripts computing the ideal of `V_{d,h,N}` as the kernel of the
//! parametrization by iterated sums.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::labels::{coordinate_labels, symbolic_coordinates};

fn variable_name(d: usize, v: usize) -> String {
    let (t, c) = (v / d + 1, v % d + 1);
    if d == 1 {
        format!("a_{t}")
    } else {
        format!("a_({t},{c})")
    }
}

/// The script declares `R` (one variable per coordinate, `all_heights`
/// adding every height below `h`), `S` (the `N·d` series entries `a_(t,c)`,
/// or `a_t` when `d = 1`), the map `phi: R -> S`, and ends with
/// `I = ker phi`.
pub fn export_macaulay2(d: usize, h: usize, n: usize, all_heights: bool) -> Result<String> {
    if d == 0 || h == 0 || n == 0 {
        return Err(Error::invalid("export needs d, h, N >= 1"));
    }
    if d > 9 {
        return Err(Error::invalid("coordinate names support at most 9 variables"));
    }
    let heights = if all_heights { 1..=h } else { h..=h };
    let labels: Vec<_> = heights.flat_map(|l| coordinate_labels(d, l)).collect();
    let coords = symbolic_coordinates(d, h, n);
    let params: Vec<String> = (0..n * d).map(|v| variable_name(d, v)).collect();

    let mut s = String::new();
    let _ = writeln!(s, "-- signature variety V_{{{d},{h},{n}}}");
    let _ = writeln!(
        s,
        "-- coordinates: iterated sums of the words of height {}",
        if all_heights { format!("1..{h}") } else { h.to_string() }
    );
    for l in &labels {
        let _ = writeln!(s, "--   {} = <S, {}>", l.name(d), l.word());
    }
    let names: Vec<String> = labels.iter().map(|l| l.name(d)).collect();
    let _ = writeln!(s, "R = QQ[{}];", names.join(", "));
    let _ = writeln!(s, "S = QQ[{}];", params.join(", "));
    let images: Vec<String> = labels
        .iter()
        .map(|l| coords[l.word()].format_with(|v| params[v].clone()))
        .collect();
    let _ = writeln!(s, "phi = map(S, R, {{");
    for (k, img) in images.iter().enumerate() {
        let sep = if k + 1 < images.len() { "," } else { "" };
        let _ = writeln!(s, "    {img}{sep}");
    }
    let _ = writeln!(s, "    }});");
    let _ = writeln!(s, "I = ker phi");
    Ok(s)
}
