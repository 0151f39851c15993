"""View blueprints for posopt."""
