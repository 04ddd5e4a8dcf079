/** Browser entry point. */
import { boot } from "./app.js";
void boot(document);
