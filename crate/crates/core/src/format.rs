//! Number formatting shared by the CLI, CSV output and `Display` impls.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `x` with 12 significant digits and trailing zeros removed.
pub fn sig(x: f64) -> String {
    sig_digits(x, 12)
}

pub fn sig_digits(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

/// `re±imi`, dropping an imaginary part below `1e-15`.
pub fn complex(z: Complex64) -> String {
    let r = sig(z.re);
    if z.im.abs() < 1e-15 {
        r
    } else if z.im < 0.0 {
        format!("{r}-{}i", sig(-z.im))
    } else {
        format!("{r}+{}i", sig(z.im))
    }
}

/// One line per row, entries separated by two spaces.
pub fn matrix(m: &DMatrix<Complex64>) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| complex(m[(r, c)])).collect();
        out.push_str(&row.join("  "));
        out.push('\n');
    }
    out
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}
