use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::term::{Name, Type, Var};

/// Axiom set `Ax(f) ⊆ {A, C}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axioms {
    pub assoc: bool,
    pub comm: bool,
}

impl Axioms {
    pub const FREE: Axioms = Axioms {
        assoc: false,
        comm: false,
    };
    pub const A: Axioms = Axioms {
        assoc: true,
        comm: false,
    };
    pub const C: Axioms = Axioms {
        assoc: false,
        comm: true,
    };
    pub const AC: Axioms = Axioms {
        assoc: true,
        comm: true,
    };

    pub fn is_free(self) -> bool {
        !self.assoc && !self.comm
    }
}

impl fmt::Display for Axioms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.assoc, self.comm) {
            (false, false) => write!(f, "{{}}"),
            (true, false) => write!(f, "[A]"),
            (false, true) => write!(f, "[C]"),
            (true, true) => write!(f, "[AC]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstDecl {
    pub ty: Type,
    pub axioms: Axioms,
}

/// Constants with their types and axioms, plus the types of the
/// originally free variables of a problem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    consts: BTreeMap<Name, ConstDecl>,
    vars: BTreeMap<Name, Type>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Declares a constant. Equational constants must have type `α → α → α`.
    pub fn add_const(&mut self, name: &str, ty: Type, axioms: Axioms) -> Result<()> {
        if !axioms.is_free() {
            let (args, res) = ty.uncurry();
            let homogeneous = args.len() == 2 && res.is_base() && args.iter().all(|a| *a == res);
            if !homogeneous {
                return Err(Error::AxiomShape {
                    name: name.to_string(),
                    axioms: axioms.to_string(),
                    ty: ty.to_string(),
                });
            }
        }
        self.consts.insert(name.into(), ConstDecl { ty, axioms });
        Ok(())
    }

    /// Builder-style [`Signature::add_const`] for tests and examples.
    pub fn with_const(mut self, name: &str, ty: Type, axioms: Axioms) -> Signature {
        self.add_const(name, ty, axioms)
            .expect("well-formed constant declaration");
        self
    }

    pub fn add_var(&mut self, name: &str, ty: Type) {
        self.vars.insert(name.into(), ty);
    }

    pub fn with_var(mut self, name: &str, ty: Type) -> Signature {
        self.add_var(name, ty);
        self
    }

    pub fn constant(&self, name: &str) -> Option<&ConstDecl> {
        self.consts.get(name)
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.vars.get_key_value(name).map(|(n, t)| Var {
            name: n.clone(),
            ty: t.clone(),
        })
    }

    pub fn axioms(&self, name: &str) -> Axioms {
        self.consts.get(name).map(|d| d.axioms).unwrap_or_default()
    }

    pub fn is_assoc(&self, name: &str) -> bool {
        self.axioms(name).assoc
    }

    pub fn consts(&self) -> impl Iterator<Item = (&Name, &ConstDecl)> {
        self.consts.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.vars.iter()
    }

    /// The same signature with every axiom dropped.
    pub fn free_view(&self) -> Signature {
        Signature {
            consts: self
                .consts
                .iter()
                .map(|(n, d)| {
                    (
                        n.clone(),
                        ConstDecl {
                            ty: d.ty.clone(),
                            axioms: Axioms::FREE,
                        },
                    )
                })
                .collect(),
            vars: self.vars.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equational_constants_need_homogeneous_binary_type() {
        let i = Type::base("i");
        let o = Type::base("o");
        let mut sig = Signature::new();
        assert!(sig
            .add_const("f", Type::curried([i.clone(), i.clone()], i.clone()), Axioms::AC)
            .is_ok());
        assert!(matches!(
            sig.add_const("g", Type::arrow(i.clone(), i.clone()), Axioms::A),
            Err(Error::AxiomShape { .. })
        ));
        assert!(sig
            .add_const("h", Type::curried([i.clone(), o.clone()], i.clone()), Axioms::C)
            .is_err());
        assert!(sig.add_const("k", Type::arrow(i.clone(), i), Axioms::FREE).is_ok());
        assert!(sig.is_assoc("f"));
        assert!(!sig.is_assoc("k"));
    }
}
