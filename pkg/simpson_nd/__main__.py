from simpson_nd.cli import main

main()
