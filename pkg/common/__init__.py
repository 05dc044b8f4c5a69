"""Field, polynomial and code primitives shared by every app."""
