namespace crackflow {}
