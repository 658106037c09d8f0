from reach.cli.main import main

main()
