from smallsum.cli import main

main()
