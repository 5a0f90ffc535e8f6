//! Differential test of Tate's algorithm against PARI's `elllocalred`
//! over Q_p for p = 2, 3, 5, 7 (data in `data/pari_padic.txt`).

use serre_trace::localfield::Padic;
use serre_trace::tate::{tate_algorithm, KodairaType};
use serre_trace::weierstrass::WeierstrassModel;

#[test]
fn matches_pari_on_padic_sample() {
    let data = include_str!("data/pari_padic.txt");
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for line in data.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(';').collect();
        let p: u64 = f[0].parse().unwrap();
        let want: KodairaType = f[6].parse().unwrap();
        let want_vd: i64 = f[7].parse().unwrap();
        let w = WeierstrassModel::parse(Padic::new(p).unwrap(), [f[1], f[2], f[3], f[4], f[5]]).unwrap();
        let inv = tate_algorithm(&w).unwrap();
        if inv.kodaira != want || inv.v_delta_min != want_vd {
            mismatches.push(format!("{line}: got {} {}", inv.kodaira, inv.v_delta_min));
        }
        checked += 1;
    }
    assert_eq!(checked, 600);
    assert!(mismatches.is_empty(), "{} mismatches:\n{}", mismatches.len(), mismatches.join("\n"));
}
