//! Line-oriented report text. Reals are printed with 17 significant digits.

use std::fmt::{Display, Write};

use wigner::{Complex64, Matrix64};

pub fn fmt_real(x: f64) -> String {
    // fold -0.0 into 0.0
    format!("{:.16e}", x + 0.0)
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt_real(z.re), fmt_real(z.im))
}

#[derive(Default)]
pub struct Writer {
    buf: String,
}

impl Writer {
    pub fn line(&mut self, text: &str) {
        self.buf.push_str(text);
        self.buf.push('\n');
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        let _ = writeln!(self.buf, "{key}: {value}");
    }

    pub fn real(&mut self, key: &str, value: f64) {
        self.field(key, fmt_real(value));
    }

    pub fn reals(&mut self, key: &str, values: &[f64]) {
        let items: Vec<String> = values.iter().map(|&x| fmt_real(x)).collect();
        self.field(key, format_args!("[{}]", items.join(", ")));
    }

    pub fn matrix(&mut self, key: &str, m: &Matrix64) {
        self.line(&format!("{key}:"));
        for i in 0..m.nrows() {
            let items: Vec<String> = m.row(i).iter().map(|&z| fmt_complex(z)).collect();
            self.line(&format!("  - [{}]", items.join(", ")));
        }
    }

    pub fn finish(self) -> String {
        self.buf
    }
}
