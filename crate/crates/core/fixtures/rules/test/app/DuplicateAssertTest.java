package app;

import org.junit.Test;

import static org.junit.Assert.assertEquals;

public class DuplicateAssertTest {
    @Test
    public void repeatsTheSameCheck() {
        String state = "ready";
        assertEquals("ready", state);
        state = "ready";
        assertEquals("ready", state);
    }

    @Test
    public void variesTheCheckArguments() {
        String first = "ready";
        String second = "done";
        assertEquals("ready", first);
        assertEquals("done", second);
    }
}
