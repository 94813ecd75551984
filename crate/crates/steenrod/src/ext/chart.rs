//! Ext charts in the `(n, s)` convention, `n = t - s`, with `h_0, h_1, h_2`
//! products, and their text, CSV and SVG renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use super::resolution::{minimal_resolution, PartialResolution, Resolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtChart {
    pub s_max: u32,
    pub t_max: i32,
    /// Internal degree of each class, per homological degree.
    pub classes: Vec<Vec<i32>>,
    /// `(i, s, class)` to the classes of degree `s + 1` hit by `h_i`.
    pub products: BTreeMap<(u8, u32, usize), Vec<usize>>,
}

/// Ext chart of a module over A(2) in the window `s <= s_max`, `t <= t_max`.
pub fn ext_dims(
    module: &crate::SteenrodModule,
    s_max: u32,
    t_max: i32,
) -> Result<ExtChart, PartialResolution> {
    Ok(ExtChart::from_resolution(&minimal_resolution(module, s_max, t_max)?))
}

impl ExtChart {
    pub fn empty(s_max: u32, t_max: i32) -> Self {
        Self {
            s_max,
            t_max,
            classes: vec![Vec::new(); s_max as usize + 1],
            products: BTreeMap::new(),
        }
    }

    pub fn from_resolution(r: &Resolution) -> Self {
        Self {
            s_max: r.s_max,
            t_max: r.t_max,
            classes: r.stages.iter().map(|st| st.degrees.clone()).collect(),
            products: r.hi_products(),
        }
    }

    /// Dimensions keyed by `(s, t)`.
    pub fn dims(&self) -> BTreeMap<(u32, i32), usize> {
        let mut out = BTreeMap::new();
        for (s, degs) in self.classes.iter().enumerate() {
            for &t in degs {
                *out.entry((s as u32, t)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn dim(&self, s: u32, t: i32) -> usize {
        self.classes
            .get(s as usize)
            .map_or(0, |d| d.iter().filter(|&&x| x == t).count())
    }

    /// Dimension at stem `n` and filtration `s`.
    pub fn dim_at(&self, n: i32, s: u32) -> usize {
        self.dim(s, n + s as i32)
    }

    /// Classes in stem `n`, filtration `s` (indices into `classes[s]`).
    pub fn classes_at(&self, n: i32, s: u32) -> Vec<usize> {
        self.classes.get(s as usize).map_or(Vec::new(), |d| {
            d.iter()
                .enumerate()
                .filter(|(_, &t)| t - s as i32 == n)
                .map(|(i, _)| i)
                .collect()
        })
    }

    pub fn h_product(&self, i: u8, s: u32, class: usize) -> &[usize] {
        self.products.get(&(i, s, class)).map_or(&[], Vec::as_slice)
    }

    fn stem_range(&self) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (s, degs) in self.classes.iter().enumerate() {
            for &t in degs {
                lo = lo.min(t - s as i32);
                hi = hi.max(t - s as i32);
            }
        }
        if lo > hi {
            (0, self.t_max.max(0))
        } else {
            (lo.min(0), hi)
        }
    }

    pub fn to_text(&self) -> String {
        let (lo, hi) = self.stem_range();
        let mut out = String::new();
        let width = 3;
        for s in (0..=self.s_max).rev() {
            let _ = write!(out, "{s:>3} |");
            for n in lo..=hi {
                let d = self.dim_at(n, s);
                let cell = if d == 0 { ".".to_string() } else { d.to_string() };
                let _ = write!(out, "{cell:>width$}");
            }
            out.push('\n');
        }
        let _ = write!(out, "    +");
        out.push_str(&"-".repeat(width * (hi - lo + 1) as usize));
        out.push('\n');
        let _ = write!(out, "     ");
        for n in lo..=hi {
            let _ = write!(out, "{n:>width$}");
        }
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,t,dim\n");
        for ((s, t), d) in self.dims() {
            let _ = writeln!(out, "{s},{t},{d}");
        }
        out
    }

    pub fn to_svg(&self, cell: u32) -> String {
        let (lo, hi) = self.stem_range();
        let cols = (hi - lo + 1) as u32;
        let rows = self.s_max + 1;
        let margin = cell;
        let width = cols * cell + 2 * margin;
        let height = rows * cell + 2 * margin;
        // position of class k of filtration s
        let place = |s: u32, k: usize| -> (f64, f64) {
            let t = self.classes[s as usize][k];
            let n = t - s as i32;
            let peers = self.classes_at(n, s);
            let rank = peers.iter().position(|&c| c == k).unwrap_or(0);
            let spread = cell as f64 / (peers.len() as f64 + 1.0);
            let x = margin as f64 + (n - lo) as f64 * cell as f64 + spread * (rank as f64 + 1.0);
            let y = (height - margin) as f64 - s as f64 * cell as f64 - cell as f64 / 2.0;
            (x, y)
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
        let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="0.5">"##);
        for c in 0..=cols {
            let x = margin + c * cell;
            let _ = writeln!(out, r#"<line x1="{x}" y1="{margin}" x2="{x}" y2="{}"/>"#, height - margin);
        }
        for r in 0..=rows {
            let y = margin + r * cell;
            let _ = writeln!(out, r#"<line x1="{margin}" y1="{y}" x2="{}" y2="{y}"/>"#, width - margin);
        }
        let _ = writeln!(out, "</g>");
        let colors = ["black", "#1f5fbf", "#bf3f1f"];
        for (&(i, s, k), targets) in &self.products {
            if s as usize + 1 >= self.classes.len() {
                continue;
            }
            let (x1, y1) = place(s, k);
            for &target in targets {
                let (x2, y2) = place(s + 1, target);
                let _ = writeln!(
                    out,
                    r#"<line class="h{i}" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="{}" stroke-width="1"/>"#,
                    colors[i as usize]
                );
            }
        }
        let radius = (cell as f64 / 10.0).max(1.5);
        for (s, degs) in self.classes.iter().enumerate() {
            for k in 0..degs.len() {
                let (x, y) = place(s as u32, k);
                let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="{radius:.1}" fill="black"/>"#);
            }
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn render(&self, format: ChartFormat, cell: u32) -> String {
        match format {
            ChartFormat::Text => self.to_text(),
            ChartFormat::Csv => self.to_csv(),
            ChartFormat::Svg => self.to_svg(cell),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Text,
    Csv,
    Svg,
}

impl FromStr for ChartFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(ChartFormat::Text),
            "csv" => Ok(ChartFormat::Csv),
            "svg" => Ok(ChartFormat::Svg),
            _ => Err(format!("unknown chart format `{s}` (expected text, csv or svg)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SteenrodModule;

    #[test]
    fn unit_class() {
        let c = ext_dims(&SteenrodModule::trivial(), 4, 8).unwrap();
        assert_eq!(c.dim(0, 0), 1);
        assert_eq!(c.dim_at(3, 1), 1); // h2
        assert_eq!(c.dim_at(6, 2), 1); // h2^2
    }

    #[test]
    fn low_range_of_trivial_chart() {
        // stems 0..=12 of Ext over A(2), filtrations up to 6
        let c = ext_dims(&SteenrodModule::trivial(), 6, 18).unwrap();
        let expected: BTreeMap<(i32, u32), usize> = [
            ((1, 1), 1), // h1
            ((2, 2), 1), // h1^2
            ((3, 1), 1), // h2
            ((3, 2), 1), // h0 h2
            ((3, 3), 1), // h0^2 h2 = h1^3
            ((6, 2), 1), // h2^2
            ((8, 3), 1), // c0
            ((8, 4), 1), // w1
            ((8, 5), 1),
            ((8, 6), 1),
            ((9, 4), 1), // h1 c0
            ((9, 5), 1), // h1 w1
            ((10, 6), 1), // h1^2 w1
            ((11, 5), 1), // h2 w1
            ((11, 6), 1), // h0 h2 w1
            ((12, 3), 1), // alpha
            ((12, 4), 1),
            ((12, 5), 1),
            ((12, 6), 1),
        ]
        .into_iter()
        .collect();
        for n in 1..=12 {
            for s in 1..=6u32 {
                if n + s as i32 > 18 {
                    continue;
                }
                let want = expected.get(&(n, s)).copied().unwrap_or(0);
                assert_eq!(c.dim_at(n, s), want, "(n, s) = ({n}, {s})");
            }
        }
    }

    #[test]
    fn csv_and_empty_documents() {
        let c = ext_dims(&SteenrodModule::trivial(), 2, 2).unwrap();
        assert_eq!(c.to_csv(), "s,t,dim\n0,0,1\n1,1,1\n1,2,1\n2,2,1\n");
        let e = ExtChart::empty(2, 4);
        assert!(e.to_text().contains('.'));
        assert!(e.to_svg(20).starts_with("<svg"));
        assert_eq!(e.to_csv(), "s,t,dim\n");
    }

    #[test]
    fn svg_draws_products() {
        let c = ext_dims(&SteenrodModule::trivial(), 3, 8).unwrap();
        let svg = c.to_svg(24);
        assert!(svg.contains(r#"class="h0""#));
        assert!(svg.contains(r#"class="h1""#));
        assert!(svg.contains(r#"class="h2""#));
    }
}
