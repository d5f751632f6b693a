// Parsing, evaluating and printing form expressions.

use lefschetz::cli::expr::{eval_constant, parse_form, render, Env};
use lefschetz::torus::ModeSet;

pub fn run_example() -> lefschetz::Result<()> {
    let modes = ModeSet::cube(2, 1)?;
    let env = Env { n: 2, omega: None, modes: &modes };
    let w = parse_form("i*(dz1^dzb1 + dz2^dzb2)", 2)?;
    println!("{w}");
    let omega = eval_constant(&w, &env)?;
    let env = Env { omega: Some(&omega), ..env };
    let e = parse_form("(1 - 2/3*i)*e[1,0,0,-1]*dz1^dzb2 + w^w", 2)?;
    let value = e.eval(&env)?;
    println!("{e}\n  = {}", render(&value));
    assert_eq!(parse_form(&e.to_string(), 2)?, e);
    match parse_form("dz1 + dz3", 2) {
        Err(err) => println!("{err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
