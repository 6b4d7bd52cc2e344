import sys

# The minilang subcommand is the per-test subject runner; dispatch it without
# paying for the orchestration stack's imports.
if len(sys.argv) >= 2 and sys.argv[1] == "minilang":
    from .subject_cli import minilang_main

    sys.exit(minilang_main(sys.argv[2:]))

from .harness import main

sys.exit(main())
