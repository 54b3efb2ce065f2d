app_name = "epwlab"
app_title = "EPW Lab"
app_publisher = "EPW Lab contributors"
app_description = "Exact-arithmetic workbench for EPW strata, Lagrangian data and Gushel-Mukai tables"
app_email = ""
app_license = "MIT"


# Command Registry
# ----------------
# Each CLI subcommand resolves to a handler through its dotted path.
cli_commands = [
    {"command": "gen", "method": "epwlab.api.cli.cmd_gen", "output": "data"},
    {"command": "stratum", "method": "epwlab.api.cli.cmd_stratum"},
    {"command": "degree", "method": "epwlab.api.cli.cmd_degree"},
    {"command": "sigma", "method": "epwlab.api.cli.cmd_sigma"},
    {"command": "pencil", "method": "epwlab.api.cli.cmd_pencil"},
    {"command": "quadric-count", "method": "epwlab.api.cli.cmd_quadric"},
    {"command": "lattice", "method": "epwlab.api.cli.cmd_lattice"},
    {"command": "bbw", "method": "epwlab.api.cli.cmd_bbw"},
    {"command": "hodge", "method": "epwlab.api.cli.cmd_hodge"},
]


# Fixtures
# --------
# Tables shipped with the package, keyed by the report that consumes them.
fixtures = {
    "lines_pushforward": "koszul_lines.json",
    "planes_pushforward": "koszul_planes.json",
    "y2_cohomology": "y2_cohomology.json",
    "hodge_diamonds": "hodge_diamonds.json",
    "quadric_cases": "quadric_cases.json",
}
