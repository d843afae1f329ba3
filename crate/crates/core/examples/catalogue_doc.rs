//! Prints the smell catalogue as Markdown (the source of `docs/SMELLS.md`).

fn main() {
    print!("{}", smelt_core::catalogue::render_markdown());
}
