//! Write a series to the JSON file format and read it back.

use bohr_hardy::cli::{parse_series_str, to_json_string, AnySeries};
use bohr_hardy::coefficient::real_operator;
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let f = OperatorSeries::from_terms(
        2,
        [
            (MultiIndex::zero(), Operator::identity(2, 2)),
            ("[0,1]".parse()?, real_operator(&[&[1.0, 2.0], &[0.0, 1.0]])),
        ],
    )?;
    let text = to_json_string(&AnySeries::PowerOperator(f.clone()));
    println!("{text}");
    let back = parse_series_str(&text)?;
    assert_eq!(back, AnySeries::PowerOperator(f));

    match parse_series_str(
        r#"{ "kind": "vector", "dim": 2, "terms": [ { "alpha": [1], "coeff": [[1.0, 0.0]] } ] }"#,
    ) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
