use std::fmt::Write as _;
use std::time::Duration;

use monochar::analysis::{Analysis, Runner, Stage, Structure};
use monochar::chartable::MonoidCharTable;
use monochar::enumeration::MonoidTable;
use monochar::green::{idempotents, GreenStructure};
use monochar::radical::{lclass_radical_dimensions, trace_form_radical};
use monochar::Transformation;
use serde::Serialize;

use crate::{CliError, Command, Format, RunConfig};

pub(crate) fn dispatch(config: &RunConfig, generators: &[Transformation]) -> Result<String, CliError> {
    let format = config.format;
    match &config.command {
        Command::Enumerate => enumerate(generators, format),
        Command::Membership { element } => membership(generators, element, format),
        Command::Green => green(generators, format),
        Command::Schutz => schutz(generators, format),
        Command::Bichar => bichar(generators, format),
        Command::Chartable => chartable(generators, format),
        Command::Cartan => cartan(generators, format),
        Command::Radical => radical(generators, format, config.oracle_max),
        Command::Bench => bench(generators, format, config.repeat),
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_rows(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn label(table: &MonoidTable, x: usize) -> Vec<u32> {
    table.element(x).to_one_based()
}

fn silent() -> Runner<fn(Stage, Duration)> {
    Runner::silent()
}

fn enumerate_table(generators: &[Transformation]) -> Result<MonoidTable, CliError> {
    Ok(silent().stage(Stage::Enumerate, || MonoidTable::enumerate(generators))?)
}

#[derive(Serialize)]
struct EnumerateOut {
    degree: usize,
    generators: usize,
    order: usize,
    idempotents: usize,
    max_word_length: usize,
    /// Number of elements per shortest-word length.
    word_lengths: Vec<usize>,
}

fn enumerate(generators: &[Transformation], format: Format) -> Result<String, CliError> {
    let table = enumerate_table(generators)?;
    let max = (0..table.order()).map(|x| table.word(x).len()).max().unwrap_or(0);
    let mut word_lengths = vec![0; max + 1];
    for x in 0..table.order() {
        word_lengths[table.word(x).len()] += 1;
    }
    let out = EnumerateOut {
        degree: table.degree(),
        generators: table.generators().len(),
        order: table.order(),
        idempotents: idempotents(&table).len(),
        max_word_length: max,
        word_lengths,
    };
    Ok(match format {
        Format::Json => json(&out),
        _ => format!(
            "degree {}\ngenerators {}\norder {}\nidempotents {}\nmax word length {}\nword lengths {:?}\n",
            out.degree, out.generators, out.order, out.idempotents, out.max_word_length, out.word_lengths
        ),
    })
}

#[derive(Serialize)]
struct MembershipOut {
    element: Vec<u32>,
    member: bool,
}

fn membership(generators: &[Transformation], element: &str, format: Format) -> Result<String, CliError> {
    let t: Transformation = element.parse().map_err(|e| CliError::Usage(format!("--element: {e}")))?;
    let member = monochar::enumeration::contains(generators, &t).map_err(|e| CliError::Usage(format!("--element: {e}")))?;
    Ok(match format {
        Format::Json => json(&MembershipOut {
            element: t.to_one_based(),
            member,
        }),
        _ => format!("{member}\n"),
    })
}

#[derive(Serialize)]
struct JClassOut {
    j_class: usize,
    rank: usize,
    r_classes: usize,
    l_classes: usize,
    h_size: usize,
    size: usize,
    regular: bool,
    idempotents: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct GreenOut {
    order: usize,
    j_classes: Vec<JClassOut>,
}

fn green_summary(table: &MonoidTable, g: &GreenStructure) -> GreenOut {
    GreenOut {
        order: table.order(),
        j_classes: g
            .j_classes
            .iter()
            .enumerate()
            .map(|(j, jc)| JClassOut {
                j_class: j,
                rank: jc.rank,
                r_classes: jc.r_classes.len(),
                l_classes: jc.l_classes.len(),
                h_size: jc.h_size(g),
                size: jc.size(),
                regular: jc.regular,
                idempotents: jc.idempotents.iter().map(|&e| label(table, e)).collect(),
            })
            .collect(),
    }
}

fn green(generators: &[Transformation], format: Format) -> Result<String, CliError> {
    let table = enumerate_table(generators)?;
    let g = silent().stage(Stage::Green, || Ok(GreenStructure::compute(&table)))?;
    Ok(match format {
        Format::Dot => g.to_dot(&table),
        Format::Json => json(&green_summary(&table, &g)),
        _ => {
            let mut out = format!("order {}\n", table.order());
            for (j, jc) in g.j_classes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "J{j} rank {}: {}x{} grid, |H| = {}, {} elements, {}",
                    jc.rank,
                    jc.r_classes.len(),
                    jc.l_classes.len(),
                    jc.h_size(&g),
                    jc.size(),
                    if jc.regular { "regular" } else { "non-regular" }
                );
                for row in &jc.grid {
                    let cells: Vec<&str> = row
                        .iter()
                        .map(|&h| if g.h_classes[h].idempotent.is_some() { "*" } else { "." })
                        .collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
            }
            out
        }
    })
}

#[derive(Serialize)]
struct SchutzOut {
    j_class: usize,
    rank: usize,
    regular: bool,
    group_order: usize,
    conjugacy_classes: usize,
    /// Irreducible degrees, for regular J-classes.
    degrees: Option<Vec<usize>>,
}

fn schutz(generators: &[Transformation], format: Format) -> Result<String, CliError> {
    let mut runner = silent();
    let s = Structure::compute(generators, &mut runner)?;
    let rows: Vec<SchutzOut> = s
        .green
        .j_classes
        .iter()
        .enumerate()
        .map(|(j, jc)| {
            let l = jc.l_classes[0];
            SchutzOut {
                j_class: j,
                rank: jc.rank,
                regular: jc.regular,
                group_order: s.schutz.l_groups[l].order(),
                conjugacy_classes: s.schutz.l_classes[l].len(),
                degrees: s.schutz.regular[j].as_ref().map(|d| d.table.degrees()),
            }
        })
        .collect();
    Ok(match format {
        Format::Json => json(&rows),
        _ => {
            let mut out = String::new();
            for r in &rows {
                let _ = write!(
                    out,
                    "J{} rank {}: group order {}, {} classes",
                    r.j_class, r.rank, r.group_order, r.conjugacy_classes
                );
                match &r.degrees {
                    Some(d) => {
                        let _ = writeln!(out, ", degrees {d:?}");
                    }
                    None => out.push_str(", non-regular\n"),
                }
            }
            out
        }
    })
}

#[derive(Serialize)]
struct BicharOut {
    c_m: Vec<Vec<u32>>,
    matrix: Vec<Vec<u64>>,
}

fn point_label(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn matrix_text<T: ToString>(rows: &[Vec<T>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  {}", padded.join("  "));
    }
    out
}

fn bichar(generators: &[Transformation], format: Format) -> Result<String, CliError> {
    let mut runner = silent();
    let s = Structure::compute(generators, &mut runner)?;
    let b = s.bicharacter(&mut runner)?;
    let c_m: Vec<Vec<u32>> = b.representatives.iter().map(|&r| label(&s.table, r)).collect();
    Ok(match format {
        Format::Json => json(&BicharOut { c_m, matrix: b.entries }),
        Format::Csv => {
            let labels: Vec<String> = c_m.iter().map(|v| point_label(v)).collect();
            let header: Vec<String> = std::iter::once(String::new()).chain(labels.iter().cloned()).collect();
            csv_rows(
                &header,
                b.entries.iter().zip(&labels).map(|(row, l)| {
                    std::iter::once(l.clone()).chain(row.iter().map(u64::to_string)).collect()
                }),
            )
        }
        _ => {
            let mut out = String::from("C_M:\n");
            for l in &c_m {
                let _ = writeln!(out, "  [{}]", point_label(l));
            }
            out.push_str("B:\n");
            out + &matrix_text(&b.entries)
        }
    })
}

#[derive(Serialize)]
struct IrreducibleOut {
    j_class: usize,
    rank: usize,
    character: usize,
}

#[derive(Serialize)]
struct TableOut {
    irreducibles: Vec<IrreducibleOut>,
    c_m: Vec<Vec<u32>>,
    table: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cartan: Option<Vec<Vec<u64>>>,
    dims: Vec<u64>,
}

fn table_out(s: &Structure, x: &MonoidCharTable, dims: Vec<u64>, cartan: Option<Vec<Vec<u64>>>) -> TableOut {
    TableOut {
        irreducibles: x
            .irreducibles
            .iter()
            .map(|i| IrreducibleOut {
                j_class: i.j_class,
                rank: s.green.j_classes[i.j_class].rank,
                character: i.character,
            })
            .collect(),
        c_m: x.c_m.representatives.iter().map(|&r| label(&s.table, r)).collect(),
        table: x.values.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        cartan,
        dims,
    }
}

fn table_csv(out: &TableOut) -> String {
    let header: Vec<String> = std::iter::once("irreducible".to_string())
        .chain(out.c_m.iter().map(|v| point_label(v)))
        .collect();
    let mut text = csv_rows(
        &header,
        out.irreducibles.iter().zip(&out.table).map(|(i, row)| {
            std::iter::once(format!("J{}.{}", i.j_class, i.character)).chain(row.iter().cloned()).collect()
        }),
    );
    if let Some(c) = &out.cartan {
        text.push('\n');
        let header: Vec<String> = std::iter::once("cartan".to_string())
            .chain(out.irreducibles.iter().map(|i| format!("J{}.{}", i.j_class, i.character)))
            .collect();
        text += &csv_rows(
            &header,
            out.irreducibles.iter().zip(c).map(|(i, row)| {
                std::iter::once(format!("J{}.{}", i.j_class, i.character))
                    .chain(row.iter().map(u64::to_string))
                    .collect()
            }),
        );
    }
    text
}

fn table_text(out: &TableOut) -> String {
    let mut text = String::from("C_M:\n");
    for l in &out.c_m {
        let _ = writeln!(text, "  [{}]", point_label(l));
    }
    text.push_str("irreducibles:\n");
    for (i, d) in out.irreducibles.iter().zip(&out.dims) {
        let _ = writeln!(text, "  J{}.{} (rank {}) dim {}", i.j_class, i.character, i.rank, d);
    }
    text.push_str("characters:\n");
    text += &matrix_text(&out.table);
    if let Some(c) = &out.cartan {
        text.push_str("cartan:\n");
        text += &matrix_text(c);
    }
    text
}

fn chartable(generators: &[Transformation], format: Format) -> Result<String, CliError> {
    let mut runner = silent();
    let s = Structure::compute(generators, &mut runner)?;
    let radicals = s.radicals(&mut runner)?;
    let x = s.character_table(&radicals, &mut runner)?;
    let dims = runner.stage(Stage::CharacterTable, || monochar::chartable::simple_dimensions(&x))?;
    let out = table_out(&s, &x, dims, None);
    Ok(match format {
        Format::Json => json(&out),
        Format::Csv => table_csv(&out),
        _ => table_text(&out),
    })
}

fn cartan(generators: &[Transformation], format: Format) -> Result<String, CliError> {
    let a = Analysis::of(generators)?;
    let out = table_out(&a.structure, &a.characters, a.dimensions.clone(), Some(a.cartan.entries.clone()));
    Ok(match format {
        Format::Json => json(&out),
        Format::Csv => table_csv(&out),
        _ => table_text(&out),
    })
}

#[derive(Serialize)]
struct LClassOut {
    l_class: usize,
    j_class: usize,
    image: Vec<u32>,
    size: usize,
    radical_dim: usize,
}

#[derive(Serialize)]
struct RadicalOut {
    l_classes: Vec<LClassOut>,
    /// Dimension of the radical of the whole algebra, when small enough to check.
    trace_form_radical: Option<usize>,
}

fn radical(generators: &[Transformation], format: Format, oracle_max: usize) -> Result<String, CliError> {
    let mut runner = silent();
    let table = enumerate_table(generators)?;
    let g = runner.stage(Stage::Green, || Ok(GreenStructure::compute(&table)))?;
    let dims = runner.stage(Stage::Radical, || Ok(lclass_radical_dimensions(&table, &g)))?;
    let l_classes = dims
        .iter()
        .enumerate()
        .filter_map(|(l, d)| {
            d.map(|radical_dim| {
                let lc = &g.l_classes[l];
                LClassOut {
                    l_class: l,
                    j_class: lc.j_class,
                    image: lc.image.iter().map(|p| p + 1).collect(),
                    size: lc.elements.len(),
                    radical_dim,
                }
            })
        })
        .collect();
    let trace_form_radical = (table.order() <= oracle_max)
        .then(|| trace_form_radical(&table, oracle_max).ok())
        .flatten();
    let out = RadicalOut {
        l_classes,
        trace_form_radical,
    };
    Ok(match format {
        Format::Json => json(&out),
        _ => {
            let mut text = String::new();
            for l in &out.l_classes {
                let _ = writeln!(
                    text,
                    "L{} (J{}, image {{{}}}): |L| = {}, dim N = {}",
                    l.l_class,
                    l.j_class,
                    point_label(&l.image),
                    l.size,
                    l.radical_dim
                );
            }
            if let Some(r) = out.trace_form_radical {
                let _ = writeln!(text, "trace-form radical dimension {r}");
            }
            text
        }
    })
}

/// Median wall time of one stage over the repetitions, with a size count
/// describing the stage's output.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub stage: &'static str,
    pub median_ms: f64,
    pub count: usize,
}

#[derive(Serialize)]
struct BenchOut {
    order: usize,
    repeat: usize,
    total_median_ms: f64,
    stages: Vec<BenchRow>,
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2
    }
}

fn stage_count(a: &Analysis, stage: Stage) -> usize {
    let s = &a.structure;
    let cm = s.c_m.len();
    match stage {
        Stage::Enumerate => s.table.order(),
        Stage::Green => s.green.h_classes.len(),
        Stage::Schutz => s.schutz.regular.iter().flatten().map(|d| d.group.order()).sum(),
        Stage::TestElements => cm,
        Stage::Bicharacter | Stage::CharacterTable | Stage::Cartan => cm * cm,
        Stage::Radical => s
            .schutz
            .regular
            .iter()
            .flatten()
            .map(|d| s.green.l_classes[s.green.l_of[d.idempotent]].elements.len())
            .max()
            .unwrap_or(0),
    }
}

fn bench(generators: &[Transformation], format: Format, repeat: usize) -> Result<String, CliError> {
    let mut times: Vec<Vec<Duration>> = vec![Vec::new(); Stage::ALL.len()];
    let mut totals = Vec::new();
    let mut last = None;
    for _ in 0..repeat {
        let mut runner = Runner::new(|stage: Stage, d: Duration| times[stage as usize].push(d));
        let start = std::time::Instant::now();
        let a = Analysis::run(generators, &mut runner)?;
        totals.push(start.elapsed());
        last = Some(a);
    }
    let a = last.expect("at least one repetition");
    let ms = |d: Duration| d.as_secs_f64() * 1e3;
    let out = BenchOut {
        order: a.structure.table.order(),
        repeat,
        total_median_ms: ms(median(totals)),
        stages: Stage::ALL
            .iter()
            .map(|&stage| BenchRow {
                stage: stage.name(),
                median_ms: ms(median(times[stage as usize].clone())),
                count: stage_count(&a, stage),
            })
            .collect(),
    };
    Ok(match format {
        Format::Json => json(&out),
        _ => {
            let mut text = format!(
                "order {}, {} repetitions, median total {:.3} ms\n",
                out.order, out.repeat, out.total_median_ms
            );
            for r in &out.stages {
                let _ = writeln!(text, "  {:<10} {:>12.3} ms  count {}", r.stage, r.median_ms, r.count);
            }
            text
        }
    })
}
