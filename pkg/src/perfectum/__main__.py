from perfectum.cli import main

raise SystemExit(main())
