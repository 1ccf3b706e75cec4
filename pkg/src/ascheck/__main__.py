from ascheck.cli import console_main

console_main()
